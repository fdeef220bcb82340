"""Control parameters and their mapping to dimensional synthesis quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import ParameterError

# Field order is the canonical parameter order used everywhere: vectors,
# manifests, report rows, and the HTTP schema.
PARAM_FIELDS = (
    "rumble",
    "rumble_decay",
    "air",
    "air_decay",
    "dust",
    "dust_decay",
    "time_separation",
    "grit_amount",
)

PARAM_LABELS = {
    "rumble": "Rumble",
    "rumble_decay": "Rumble Decay",
    "air": "Air",
    "air_decay": "Air Decay",
    "dust": "Dust",
    "dust_decay": "Dust Decay",
    "time_separation": "Time Separation",
    "grit_amount": "Grit Amount",
}

# Dimensional ranges for the exponential maps (seconds).
RUMBLE_DECAY_RANGE = (0.2, 2.5)
AIR_DECAY_RANGE = (0.05, 1.0)
DUST_DECAY_RANGE = (0.1, 1.5)
ONSET_DELAY_RANGE = (0.005, 0.3)


@dataclass(frozen=True)
class ExplosionParams:
    """The eight normalized controls, each in [0, 1]."""

    rumble: float = 0.5
    rumble_decay: float = 0.5
    air: float = 0.5
    air_decay: float = 0.5
    dust: float = 0.5
    dust_decay: float = 0.5
    time_separation: float = 0.5
    grit_amount: float = 0.5

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (0.0 <= v <= 1.0):
                raise ParameterError(
                    f"{f.name} must lie in [0, 1], got {v!r}"
                )

    def to_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in PARAM_FIELDS])

    @classmethod
    def from_array(cls, vec) -> "ExplosionParams":
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (len(PARAM_FIELDS),):
            raise ParameterError(
                f"expected {len(PARAM_FIELDS)} values, got shape {vec.shape}"
            )
        return cls(**{name: float(v) for name, v in zip(PARAM_FIELDS, vec)})

    def replace(self, **changes) -> "ExplosionParams":
        values = {name: getattr(self, name) for name in PARAM_FIELDS}
        values.update(changes)
        return ExplosionParams(**values)


@dataclass(frozen=True)
class RenderConfig:
    """Rendering format and reproducibility settings."""

    sample_rate_hz: int = 24000
    duration_s: float = 3.0
    seed: int = 0
    limiter_enabled: bool = True
    peak_normalize: bool = True
    peak_target: float = 0.9

    def __post_init__(self):
        if self.sample_rate_hz < 8000:
            raise ParameterError(
                f"sample_rate_hz must be >= 8000, got {self.sample_rate_hz}"
            )
        if not self.duration_s > 0:
            raise ParameterError(f"duration_s must be > 0, got {self.duration_s}")
        if not 0 <= self.seed <= (1 << 64) - 1:
            raise ParameterError("seed must fit in 64 unsigned bits")

    @property
    def num_samples(self) -> int:
        return round(self.sample_rate_hz * self.duration_s)


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensional form of the controls (gains, seconds) fed to the renderer."""

    rumble_gain: float
    rumble_decay_s: float
    air_gain: float
    air_decay_s: float
    dust_gain: float
    dust_decay_s: float
    onset_delay_s: float
    grit_depth: float


def _exp_map(value: float, lo: float, hi: float) -> float:
    # lo * (hi/lo)**value: geometric interpolation, perceptually uniform in time
    return lo * math.pow(hi / lo, value)


def map_to_physical(params: ExplosionParams) -> PhysicalParams:
    """Map normalized controls to gains and time constants.

    Amounts map linearly (gain = value); decays and the onset delay map
    exponentially between their documented bounds.
    """
    return PhysicalParams(
        rumble_gain=params.rumble,
        rumble_decay_s=_exp_map(params.rumble_decay, *RUMBLE_DECAY_RANGE),
        air_gain=params.air,
        air_decay_s=_exp_map(params.air_decay, *AIR_DECAY_RANGE),
        dust_gain=params.dust,
        dust_decay_s=_exp_map(params.dust_decay, *DUST_DECAY_RANGE),
        onset_delay_s=_exp_map(params.time_separation, *ONSET_DELAY_RANGE),
        grit_depth=params.grit_amount,
    )
