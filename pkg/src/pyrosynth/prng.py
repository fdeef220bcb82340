"""SplitMix64 pseudo-random numbers.

All stochastic signal content in the package flows through this module so
renders are bit-reproducible across platforms and numpy versions.  The
generator state after n steps is ``seed + n * GAMMA (mod 2**64)``, which lets
whole blocks of draws be produced with vectorized numpy integer arithmetic.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# 2**-53: scale factor taking the high 53 bits of a draw into [0, 1)
_U53 = 2.0**-53


def prng_next(state: int) -> tuple[int, float]:
    """Advance one step; return (new_state, uniform value in [0, 1))."""
    state = (state + GAMMA) & MASK64
    raw = _scramble_int(state)
    return state, (raw >> 11) * _U53


def _scramble_int(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def _raw_block(seed: int, start: int, n: int) -> np.ndarray:
    """Raw 64-bit outputs for steps start+1 .. start+n of the stream."""
    with np.errstate(over="ignore"):
        idx = np.arange(start + 1, start + n + 1, dtype=np.uint64)
        z = np.uint64(seed & MASK64) + idx * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))


class SplitMix64:
    """Stateful stream over the SplitMix64 sequence for a given seed.

    ``uniforms``/``gaussians`` consume the same underlying sequence as
    repeated ``next_*`` calls, so draw order is well defined no matter how
    values are blocked.
    """

    def __init__(self, seed: int):
        self._seed = seed & MASK64
        self._steps = 0

    def next_raw(self) -> int:
        self._steps += 1
        state = (self._seed + self._steps * GAMMA) & MASK64
        return _scramble_int(state)

    def next_uniform(self) -> float:
        return (self.next_raw() >> 11) * _U53

    def uniforms(self, n: int) -> np.ndarray:
        """n uniform draws in [0, 1) as float64."""
        if n < 0:
            raise ParameterError(f"draw count must be >= 0, got {n}")
        raw = _raw_block(self._seed, self._steps, n)
        self._steps += n
        return (raw >> np.uint64(11)).astype(np.float64) * _U53

    def gaussians(self, n: int) -> np.ndarray:
        """n standard-normal draws via Box-Muller on uniform pairs."""
        m = (n + 1) // 2
        u = self.uniforms(2 * m)
        # 1 - u keeps the log argument in (0, 1]
        r = np.sqrt(-2.0 * np.log(1.0 - u[:m]))
        theta = 2.0 * np.pi * u[m:]
        z = np.concatenate([r * np.cos(theta), r * np.sin(theta)])
        return z[:n]

    def integers(self, n: int, upper: int) -> np.ndarray:
        """n draws uniform over {0, ..., upper-1} (by scaling, fine for small upper)."""
        if upper <= 0:
            raise ParameterError(f"upper bound must be positive, got {upper}")
        return np.minimum((self.uniforms(n) * upper).astype(np.int64), upper - 1)
