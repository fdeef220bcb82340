"""Magnitude spectrograms and the multi-resolution spectral distance."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .audio import AudioBuffer, check_compatible
from .errors import ParameterError

DEFAULT_FFT_SIZES = (2048, 1024, 512, 256, 128, 64)


@njit(cache=True, fastmath=True)
def _mag_store_and_l1(spec, ref_mag, out_mag_eps, eps):
    """Magnitudes of spec into out (plus eps) and the L1 sum against ref.

    One fused pass; used both to build references (ref = zeros) and to
    evaluate candidates, so magnitudes take the identical code path and
    identical inputs give exact zeros.
    """
    s = 0.0
    for i in range(spec.shape[0]):
        for j in range(spec.shape[1]):
            z = spec[i, j]
            m = np.sqrt(z.real * z.real + z.imag * z.imag)
            s += abs(m - ref_mag[i, j])
            out_mag_eps[i, j] = m + eps
    return s


@njit(cache=True, fastmath=True)
def _l1_sum(a, b):
    s = 0.0
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            s += abs(a[i, j] - b[i, j])
    return s


@njit(cache=True, fastmath=True)
def _gather_windowed(padded, hop, window, out):
    """Windowed overlapping frames from an already-padded signal."""
    for f in range(out.shape[0]):
        base = f * hop
        for j in range(out.shape[1]):
            out[f, j] = padded[base + j] * window[j]


@dataclass(frozen=True)
class StftConfig:
    """Resolutions for the multi-scale loss; hop is fft_size/4, Hann window."""

    fft_sizes: tuple[int, ...] = DEFAULT_FFT_SIZES
    log_epsilon: float = 1e-7

    def __post_init__(self):
        if not self.fft_sizes:
            raise ParameterError("fft_sizes must be non-empty")
        for size in self.fft_sizes:
            if size < 32 or size & (size - 1) != 0:
                raise ParameterError(
                    f"fft sizes must be powers of two >= 32, got {size}"
                )


@dataclass
class Spectrogram:
    """Non-negative magnitude frames (frames x bins)."""

    magnitudes: np.ndarray = field(repr=False)
    frame_hop_s: float = 0.0
    bin_hz: float = 0.0


def hann_periodic(n: int) -> np.ndarray:
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


def _windowed_frames(
    samples: np.ndarray,
    fft_size: int,
    hop: int,
    window: np.ndarray,
    out: np.ndarray | None = None,
) -> np.ndarray:
    """Centered, reflection-padded, windowed frames (frames x fft_size)."""
    pad = fft_size // 2
    padded = np.pad(samples, pad, mode="reflect")
    n_frames = len(samples) // hop + 1
    frames = np.lib.stride_tricks.sliding_window_view(padded, fft_size)[::hop][:n_frames]
    if out is None:
        return frames * window
    np.multiply(frames, window, out=out)
    return out


def _frame_magnitudes(
    samples: np.ndarray, fft_size: int, hop: int, window: np.ndarray
) -> np.ndarray:
    """Centered frames with reflection padding; |rfft| per frame."""
    return np.abs(np.fft.rfft(_windowed_frames(samples, fft_size, hop, window), axis=1))


def stft_magnitude(
    buffer: AudioBuffer,
    fft_size: int,
    hop: int | None = None,
    window: np.ndarray | None = None,
) -> Spectrogram:
    """Magnitude spectrogram with centered Hann-windowed frames."""
    if hop is None:
        hop = fft_size // 4
    if len(buffer) < fft_size:
        raise ParameterError(
            f"buffer of {len(buffer)} samples is shorter than one {fft_size}-point frame"
        )
    if window is None:
        window = hann_periodic(fft_size)
    mags = _frame_magnitudes(buffer.samples, fft_size, hop, window)
    return Spectrogram(
        magnitudes=mags,
        frame_hop_s=hop / buffer.sample_rate_hz,
        bin_hz=buffer.sample_rate_hz / fft_size,
    )


class SpectralLossReference:
    """A target's spectrograms, precomputed once for repeated comparisons.

    The sound matcher evaluates thousands of candidates against a single
    target; caching the target side and reusing scratch buffers halves the
    cost without changing any arithmetic relative to
    ``multires_spectral_loss``.
    """

    def __init__(self, target: AudioBuffer, cfg: StftConfig = StftConfig()):
        self.cfg = cfg
        self.sample_rate_hz = target.sample_rate_hz
        self.num_samples = len(target)
        if self.num_samples < max(cfg.fft_sizes):
            raise ParameterError(
                f"target of {self.num_samples} samples is shorter than the "
                f"largest frame ({max(cfg.fft_sizes)})"
            )
        self._max_pad = max(cfg.fft_sizes) // 2
        self._windows = [hann_periodic(size) for size in cfg.fft_sizes]
        self._mags = []
        self._logs = []
        self._scratch = []
        self._frame_buf = []
        self._spec_buf = []
        for size, w, frames in zip(
            self.cfg.fft_sizes, self._windows, self._all_frames(target.samples)
        ):
            spec = np.fft.rfft(frames, axis=1)
            mag = np.empty(spec.shape)
            _mag_store_and_l1(spec, np.zeros_like(mag), mag, 0.0)
            self._mags.append(mag)
            self._logs.append(np.log(mag + cfg.log_epsilon))
            self._scratch.append(np.empty_like(mag))
            self._frame_buf.append(np.empty(frames.shape))
            self._spec_buf.append(np.empty(spec.shape, dtype=np.complex128))

    def _all_frames(self, samples: np.ndarray):
        """Windowed frames per resolution, sharing one reflection pad.

        A pad of width p <= max_pad is a contiguous slice of the max-width
        pad (single reflection only, since the signal is longer than any
        frame), so every resolution reads from the same padded array.
        """
        padded_max = np.pad(samples, self._max_pad, mode="reflect")
        n = len(samples)
        for i, (size, window) in enumerate(zip(self.cfg.fft_sizes, self._windows)):
            pad = size // 2
            hop = size // 4
            view = padded_max[self._max_pad - pad : self._max_pad + pad + n]
            n_frames = n // hop + 1
            out = (
                self._frame_buf[i]
                if len(self._frame_buf) > i
                else np.empty((n_frames, size))
            )
            _gather_windowed(view, hop, window, out)
            yield out

    def loss(self, other: AudioBuffer) -> float:
        if other.sample_rate_hz != self.sample_rate_hz or len(other) != self.num_samples:
            raise ParameterError(
                "buffers must share sample rate and length "
                f"(target {self.sample_rate_hz} Hz / {self.num_samples} samples, "
                f"got {other.sample_rate_hz} Hz / {len(other)} samples)"
            )
        eps = self.cfg.log_epsilon
        total = 0.0
        for ref_mag, ref_log, scratch, spec_buf, frames in zip(
            self._mags,
            self._logs,
            self._scratch,
            self._spec_buf,
            self._all_frames(other.samples),
        ):
            spec = np.fft.rfft(frames, axis=1, out=spec_buf)
            total += _mag_store_and_l1(spec, ref_mag, scratch, eps) / scratch.size
            np.log(scratch, out=scratch)
            total += _l1_sum(scratch, ref_log) / scratch.size
        return total


def multires_spectral_loss(
    x: AudioBuffer, y: AudioBuffer, cfg: StftConfig = StftConfig()
) -> float:
    """Sum over resolutions of mean linear and mean log magnitude L1 distances.

    Each resolution's terms are means over the spectrogram entries, so no
    single FFT size dominates.  Symmetric, non-negative, zero iff all
    magnitude spectrograms agree.
    """
    check_compatible(x, y)
    return SpectralLossReference(y, cfg).loss(x)
