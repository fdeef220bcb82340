"""Scalar timbral features: boominess, brightness, roughness, depth.

These are lightweight computable proxies for the perceptual attributes the
control-evaluation protocols track.  They are deterministic functions of the
magnitude spectrogram; a silent buffer maps to all zeros by convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio import AudioBuffer
from .spectral import stft_magnitude

FRAME_SIZE = 1024
HOP = 256

DEPTH_CUTOFF_HZ = 100.0
BOOM_BAND_HZ = (20.0, 250.0)
ROUGHNESS_MAX_PEAKS = 20
# Peaks below this fraction of the frame's largest peak are ignored; the Hann
# window's strongest sidelobe sits at -31.5 dB (0.027), so pure tones do not
# spawn spurious interacting partials.
ROUGHNESS_PEAK_FLOOR = 0.04


@dataclass(frozen=True)
class TimbralFeatures:
    boominess: float
    brightness: float
    roughness: float
    depth: float

    def as_dict(self) -> dict[str, float]:
        return {
            "boominess": self.boominess,
            "brightness": self.brightness,
            "roughness": self.roughness,
            "depth": self.depth,
        }

    @staticmethod
    def names() -> tuple[str, ...]:
        return ("boominess", "brightness", "roughness", "depth")


def _pair_roughness(freqs: np.ndarray, amps: np.ndarray) -> float:
    # Sethares-style dissonance: for partials (f1, a1), (f2, a2) with f1 <= f2,
    #   s = 0.24 / (0.0207 * f1 + 18.96)
    #   d = min(a1, a2) * (exp(-3.5 * s * (f2 - f1)) - exp(-5.75 * s * (f2 - f1)))
    # summed over all pairs; amplitudes are normalized to the frame's largest
    # peak so the measure reflects spectral interaction, not level.
    order = np.argsort(freqs)
    f = freqs[order]
    a = amps[order]
    df = f[None, :] - f[:, None]
    s = 0.24 / (0.0207 * f[:, None] + 18.96)
    d = np.exp(-3.5 * s * df) - np.exp(-5.75 * s * df)
    w = np.minimum(a[:, None], a[None, :])
    upper = np.triu(np.ones_like(df, dtype=bool), k=1)
    return float(np.sum(w[upper] * d[upper]))


def _frame_roughness(mag_frame: np.ndarray, bin_hz: float) -> float:
    inner = mag_frame[1:-1]
    is_peak = (inner > mag_frame[:-2]) & (inner >= mag_frame[2:])
    idx = np.flatnonzero(is_peak) + 1
    if len(idx) == 0:
        return 0.0
    peak = mag_frame[idx].max()
    if peak <= 0.0:
        return 0.0
    idx = idx[mag_frame[idx] >= ROUGHNESS_PEAK_FLOOR * peak]
    if len(idx) < 2:
        return 0.0
    if len(idx) > ROUGHNESS_MAX_PEAKS:
        top = np.argpartition(mag_frame[idx], -ROUGHNESS_MAX_PEAKS)[-ROUGHNESS_MAX_PEAKS:]
        idx = idx[top]
    amps = mag_frame[idx]
    return _pair_roughness(idx * bin_hz, amps / peak)


def extract_features(buffer: AudioBuffer) -> TimbralFeatures:
    """Compute the four timbral features of a clip."""
    spec = stft_magnitude(buffer, FRAME_SIZE, HOP)
    mag = spec.magnitudes
    power = mag**2
    total_energy = power.sum()
    if total_energy == 0.0:
        return TimbralFeatures(0.0, 0.0, 0.0, 0.0)

    freqs = np.arange(mag.shape[1]) * spec.bin_hz

    # brightness: spectral centroid per frame, averaged with frame-energy weights
    mag_sums = mag.sum(axis=1)
    valid = mag_sums > 0.0
    centroids = np.zeros(len(mag))
    centroids[valid] = (mag[valid] @ freqs) / mag_sums[valid]
    frame_energy = power.sum(axis=1)
    brightness = float((frame_energy @ centroids) / total_energy)

    # depth: fraction of spectral energy below the cutoff
    depth = float(power[:, freqs < DEPTH_CUTOFF_HZ].sum() / total_energy)

    # boominess: energy fraction in the low band, frame-energy weighted
    # (identical to the global band fraction, kept separate from depth by the
    # wider 20..250 Hz band)
    boom_band = (freqs >= BOOM_BAND_HZ[0]) & (freqs <= BOOM_BAND_HZ[1])
    boominess = float(power[:, boom_band].sum() / total_energy)

    # roughness uses interior frames only: frames whose window overlaps the
    # clip edges see reflection-padding artifacts that read as spurious
    # interacting partials
    margin = -(-FRAME_SIZE // 2 // HOP)  # ceil(frame/2 / hop)
    rough_frames = mag[margin : len(mag) - margin] if len(mag) > 2 * margin else mag
    roughness = float(
        np.mean([_frame_roughness(f, spec.bin_hz) for f in rough_frames])
    )
    return TimbralFeatures(boominess, brightness, roughness, depth)
