"""WAV reading/writing and real-recording normalization."""

from __future__ import annotations

import struct

import numpy as np
from scipy.io import wavfile

from .audio import AudioBuffer
from .errors import SilentAudioError, WavFormatError
from .params import RenderConfig

ONSET_THRESHOLD_DBFS = -40.0
RESAMPLE_TAPS = 32
RESAMPLE_KAISER_BETA = 8.6


def quantize_pcm16(samples: np.ndarray) -> np.ndarray:
    """Symmetric-scale PCM16 quantization.

    Scale 32768 on write matches the read-side divisor, keeping the
    round-trip error within half a quantization step (2^-16; 2^-15 at the
    clipped positive full-scale point).
    """
    clipped = np.clip(samples, -1.0, 1.0)
    return np.clip(np.round(clipped * 32768.0), -32768, 32767).astype(np.int16)


def write_wav(buffer: AudioBuffer, path) -> None:
    """Write PCM16 little-endian mono RIFF/WAVE."""
    wavfile.write(path, buffer.sample_rate_hz, quantize_pcm16(buffer.samples))


def read_wav(path) -> AudioBuffer:
    """Read PCM16 or float32 WAV, mono or stereo (stereo averaged to mono).

    Samples are returned scaled to nominal [-1, 1].
    """
    try:
        rate, data = wavfile.read(path)
    except (ValueError, struct.error, EOFError) as exc:
        raise WavFormatError(f"{path}: {exc}") from exc
    if data.dtype == np.int16:
        samples = data.astype(np.float64) / 32768.0
    elif data.dtype == np.float32:
        samples = data.astype(np.float64)
    else:
        raise WavFormatError(
            f"{path}: unsupported sample format {data.dtype}; expected PCM16 or float32"
        )
    if samples.ndim == 2:
        if samples.shape[1] > 2:
            raise WavFormatError(
                f"{path}: {samples.shape[1]} channels; expected mono or stereo"
            )
        samples = samples.mean(axis=1)
    return AudioBuffer(int(rate), samples)


def resample_sinc(samples: np.ndarray, sr_in: int, sr_out: int) -> np.ndarray:
    """Windowed-sinc resampling (32-tap Kaiser window, beta 8.6)."""
    if sr_in == sr_out:
        return samples.copy()
    n_out = round(len(samples) * sr_out / sr_in)
    ratio = sr_out / sr_in
    cutoff = min(1.0, ratio)  # in units of the input Nyquist
    pos = np.arange(n_out) / ratio
    base = np.floor(pos).astype(np.int64)
    offsets = np.arange(-(RESAMPLE_TAPS // 2 - 1), RESAMPLE_TAPS // 2 + 1)
    idx = base[:, None] + offsets[None, :]
    dist = pos[:, None] - idx
    half = RESAMPLE_TAPS / 2.0
    window = np.where(
        np.abs(dist) <= half,
        np.i0(RESAMPLE_KAISER_BETA * np.sqrt(np.maximum(0.0, 1.0 - (dist / half) ** 2)))
        / np.i0(RESAMPLE_KAISER_BETA),
        0.0,
    )
    kernel = cutoff * np.sinc(cutoff * dist) * window
    valid = (idx >= 0) & (idx < len(samples))
    taps = np.where(valid, samples[np.clip(idx, 0, len(samples) - 1)], 0.0)
    return np.einsum("ij,ij->i", taps, kernel)


def load_real(path, target: RenderConfig = RenderConfig()) -> AudioBuffer:
    """Load a recording and normalize it to the target format.

    The clip is resampled to the target rate, trimmed so it starts at the
    first sample above the onset threshold, then cut or zero-padded at the
    tail to exactly the target length.
    """
    raw = read_wav(path)
    samples = resample_sinc(raw.samples, raw.sample_rate_hz, target.sample_rate_hz)
    threshold = 10.0 ** (ONSET_THRESHOLD_DBFS / 20.0)
    above = np.flatnonzero(np.abs(samples) > threshold)
    if len(above) == 0:
        raise SilentAudioError(
            f"{path}: no sample above {ONSET_THRESHOLD_DBFS} dBFS; cannot locate onset"
        )
    samples = samples[above[0] :]
    n = target.num_samples
    if len(samples) >= n:
        samples = samples[:n]
    else:
        samples = np.concatenate([samples, np.zeros(n - len(samples))])
    return AudioBuffer(target.sample_rate_hz, samples)
