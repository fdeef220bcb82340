"""Mono audio buffer container."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError


@dataclass
class AudioBuffer:
    """A mono sample sequence with its sample rate.

    Samples are float64 in nominal [-1, 1]; rendered buffers with the limiter
    enabled are guaranteed bounded.
    """

    sample_rate_hz: int
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.sample_rate_hz <= 0:
            raise ParameterError(
                f"sample_rate_hz must be positive, got {self.sample_rate_hz}"
            )
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1:
            raise ParameterError(f"samples must be 1-D, got shape {self.samples.shape}")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate_hz


def check_compatible(x: AudioBuffer, y: AudioBuffer) -> None:
    """Raise unless both buffers share sample rate and length."""
    if x.sample_rate_hz != y.sample_rate_hz:
        raise ParameterError(
            f"sample rates differ: {x.sample_rate_hz} vs {y.sample_rate_hz}"
        )
    if len(x) != len(y):
        raise ParameterError(f"lengths differ: {len(x)} vs {len(y)}")
