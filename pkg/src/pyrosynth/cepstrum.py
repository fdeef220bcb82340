"""Mel-cepstral coefficients and the mel-cepstral distortion distance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft

from .audio import AudioBuffer, check_compatible
from .errors import ParameterError
from .spectral import stft_magnitude

_MCD_SCALE = 10.0 / np.log(10.0)


@dataclass(frozen=True)
class CepstrumConfig:
    n_mels: int = 80
    fmin_hz: float = 20.0
    fmax_hz: float | None = None  # None: Nyquist
    n_coeffs: int = 13  # coefficients 1..n_coeffs; the gain-carrying 0th is dropped
    frame_size: int = 1024
    hop: int = 256
    log_floor: float = 1e-10

    def __post_init__(self):
        if self.n_coeffs >= self.n_mels:
            raise ParameterError(
                f"n_coeffs ({self.n_coeffs}) must be < n_mels ({self.n_mels})"
            )

    def resolved_fmax(self, sample_rate_hz: int) -> float:
        nyquist = sample_rate_hz / 2.0
        fmax = nyquist if self.fmax_hz is None else self.fmax_hz
        if fmax > nyquist:
            raise ParameterError(f"fmax {fmax} Hz exceeds Nyquist {nyquist} Hz")
        return fmax


def hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f) / 700.0)


def mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m) / 2595.0) - 1.0)


def mel_filterbank(
    sample_rate_hz: int, n_fft: int, n_mels: int, fmin_hz: float, fmax_hz: float
) -> np.ndarray:
    """Triangular filters (peak 1) equally spaced on the mel scale."""
    mel_edges = np.linspace(hz_to_mel(fmin_hz), hz_to_mel(fmax_hz), n_mels + 2)
    hz_edges = mel_to_hz(mel_edges)
    bin_freqs = np.arange(n_fft // 2 + 1) * sample_rate_hz / n_fft
    fb = np.zeros((n_mels, len(bin_freqs)))
    for m in range(n_mels):
        lo, center, hi = hz_edges[m], hz_edges[m + 1], hz_edges[m + 2]
        up = (bin_freqs - lo) / (center - lo)
        down = (hi - bin_freqs) / (hi - center)
        fb[m] = np.maximum(0.0, np.minimum(up, down))
    return fb


def dct_ortho(x: np.ndarray) -> np.ndarray:
    """Orthonormal DCT-II along the last axis."""
    return scipy.fft.dct(x, type=2, norm="ortho", axis=-1)


def mel_cepstra(buffer: AudioBuffer, cfg: CepstrumConfig = CepstrumConfig()) -> np.ndarray:
    """Frames x n_coeffs cepstra: log mel energies through an orthonormal DCT-II.

    A uniform gain change shifts every log energy by the same constant, which
    lands entirely in the discarded 0th coefficient.
    """
    if len(buffer) == 0:
        raise ParameterError("buffer is empty")
    spec = stft_magnitude(buffer, cfg.frame_size, cfg.hop)
    power = spec.magnitudes**2
    fb = mel_filterbank(
        buffer.sample_rate_hz,
        cfg.frame_size,
        cfg.n_mels,
        cfg.fmin_hz,
        cfg.resolved_fmax(buffer.sample_rate_hz),
    )
    energies = power @ fb.T
    log_e = np.log(np.maximum(energies, cfg.log_floor))
    return dct_ortho(log_e)[:, 1 : cfg.n_coeffs + 1]


def mcd(x: AudioBuffer, y: AudioBuffer, cfg: CepstrumConfig = CepstrumConfig()) -> float:
    """Mean frame-wise mel-cepstral distortion (no time alignment)."""
    check_compatible(x, y)
    cx = mel_cepstra(x, cfg)
    cy = mel_cepstra(y, cfg)
    per_frame = np.sqrt(2.0 * np.sum((cx - cy) ** 2, axis=1))
    return float(_MCD_SCALE * per_frame.mean())
