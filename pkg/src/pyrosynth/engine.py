"""Deterministic explosion renderer.

Three noise-driven layers are synthesized independently and mixed:

* rumble -- white noise through a 4th-order 100 Hz low-pass (two cascaded
  biquads), exponential decay, slow amplitude LFO, optional grit crackle
* air    -- white noise through a wide band-pass around 900 Hz with a 5 ms
  attack and exponential decay
* dust   -- an exponentially thinning Poisson impulse train through a 2 kHz
  high-pass

Each layer draws from its own SplitMix64 sub-stream (seed XOR layer tag), so
layers are individually reproducible and the full render is their exact sum
before the limiter/normalization stage.

The seed-dependent ingredients (filtered noise beds, impulse draws) do not
depend on the control vector, so they are cached in a ``RenderWorkspace``.
``render`` builds a fresh workspace per call; the sound matcher reuses one
across thousands of candidate evaluations.  Both paths share the same
combination code, so outputs are bit-identical either way.
"""

from __future__ import annotations

import math

import numpy as np

from .audio import AudioBuffer
from .errors import ParameterError
from .filters import bandpass_coeffs, biquad, highpass_coeffs, lowpass_coeffs
from .params import ExplosionParams, PhysicalParams, RenderConfig, map_to_physical
from .prng import SplitMix64

COMPONENT_TAGS = {
    "rumble": 0x52554D42,  # "RUMB"
    "air": 0x00414952,     # "AIR"
    "dust": 0x44555354,    # "DUST"
}

# Mix calibration: relative loudness of the layers at amount = 1.  The
# filtered rumble noise retains only a ~100 Hz band of the white input, so it
# needs a large make-up gain to balance the much wider air band; dust sits low
# so the sparse crackle rides on top of the mix instead of dominating the
# spectrum's upper end.
RUMBLE_LEVEL = 6.0
AIR_LEVEL = 1.0
DUST_LEVEL = 0.15

RUMBLE_CUTOFF_HZ = 100.0
RUMBLE_LFO_HZ = 4.0
RUMBLE_LFO_DEPTH = 0.3
GRIT_LP_HZ = 90.0
AIR_CENTER_HZ = 900.0
AIR_BANDWIDTH_HZ = 2700.0  # nominal 300..3000 band
AIR_ATTACK_S = 0.005
DUST_DENSITY_HZ = 800.0
DUST_HP_HZ = 2000.0
DUST_AMP_RANGE = (0.3, 1.0)
FILTER_Q = 1.0 / math.sqrt(2.0)


class RenderWorkspace:
    """Noise ingredients for one (seed, sample rate, duration) triple.

    Ingredient groups are built lazily on first use and in a fixed draw order
    within each layer's stream, so partial use (single-component renders,
    zero-gain early-outs) never perturbs the sequences.
    """

    def __init__(self, config: RenderConfig):
        self.config = config
        n = config.num_samples
        self.t = np.arange(n) / config.sample_rate_hz
        self._rumble_stream: SplitMix64 | None = None
        self._rumble_body: np.ndarray | None = None
        self._rumble_lfo: np.ndarray | None = None
        self._grit_mod: np.ndarray | None = None
        self._air_band: np.ndarray | None = None
        self._air_ramp: np.ndarray | None = None
        self._dust_u: np.ndarray | None = None
        self._dust_amps: np.ndarray | None = None

    def _rumble_parts(self) -> tuple[np.ndarray, np.ndarray]:
        if self._rumble_body is None:
            cfg = self.config
            stream = SplitMix64(cfg.seed ^ COMPONENT_TAGS["rumble"])
            noise = 2.0 * stream.uniforms(len(self.t)) - 1.0
            lp = lowpass_coeffs(RUMBLE_CUTOFF_HZ, FILTER_Q, cfg.sample_rate_hz)
            self._rumble_body = biquad(biquad(noise, lp), lp)
            # slow amplitude motion: random control points at the LFO rate,
            # linearly interpolated
            n_ctrl = math.ceil(cfg.duration_s * RUMBLE_LFO_HZ) + 1
            ctrl = 2.0 * stream.uniforms(n_ctrl) - 1.0
            lfo = np.interp(self.t, np.arange(n_ctrl) / RUMBLE_LFO_HZ, ctrl)
            self._rumble_lfo = 1.0 + RUMBLE_LFO_DEPTH * lfo
            self._rumble_stream = stream
        return self._rumble_body, self._rumble_lfo

    def _grit_modulator(self) -> np.ndarray:
        if self._grit_mod is None:
            self._rumble_parts()
            cfg = self.config
            grit_noise = 2.0 * self._rumble_stream.uniforms(len(self.t)) - 1.0
            n_lf = biquad(
                grit_noise, lowpass_coeffs(GRIT_LP_HZ, FILTER_Q, cfg.sample_rate_hz)
            )
            np.abs(n_lf, out=n_lf)
            peak = np.max(n_lf)
            if peak > 0.0:
                n_lf /= peak
            self._grit_mod = n_lf
        return self._grit_mod

    def _air_parts(self) -> tuple[np.ndarray, np.ndarray]:
        if self._air_band is None:
            cfg = self.config
            stream = SplitMix64(cfg.seed ^ COMPONENT_TAGS["air"])
            noise = 2.0 * stream.uniforms(len(self.t)) - 1.0
            q = AIR_CENTER_HZ / AIR_BANDWIDTH_HZ
            self._air_band = biquad(
                noise, bandpass_coeffs(AIR_CENTER_HZ, q, cfg.sample_rate_hz)
            )
            self._air_ramp = np.minimum(self.t / AIR_ATTACK_S, 1.0)
        return self._air_band, self._air_ramp

    def _dust_parts(self) -> tuple[np.ndarray, np.ndarray]:
        if self._dust_u is None:
            cfg = self.config
            stream = SplitMix64(cfg.seed ^ COMPONENT_TAGS["dust"])
            n = len(self.t)
            self._dust_u = stream.uniforms(n)
            u_amp = stream.uniforms(n)
            u_sign = stream.uniforms(n)
            lo, hi = DUST_AMP_RANGE
            self._dust_amps = (lo + (hi - lo) * u_amp) * np.where(
                u_sign < 0.5, -1.0, 1.0
            )
        return self._dust_u, self._dust_amps


def _delay(x: np.ndarray, delay_s: float, sr: int) -> np.ndarray:
    d = round(delay_s * sr)
    if d <= 0:
        return x
    y = np.zeros_like(x)
    if d < len(x):
        y[d:] = x[: len(x) - d]
    return y


def _rumble(ws: RenderWorkspace, phys: PhysicalParams) -> np.ndarray:
    if phys.rumble_gain == 0.0:
        return np.zeros_like(ws.t)
    body, lfo = ws._rumble_parts()
    out = body * np.exp(-ws.t / phys.rumble_decay_s)
    out *= lfo
    if phys.grit_depth > 0.0:
        g = phys.grit_depth
        out *= (1.0 - g) + g * ws._grit_modulator()
    out *= RUMBLE_LEVEL * phys.rumble_gain
    return out


def _air(ws: RenderWorkspace, phys: PhysicalParams) -> np.ndarray:
    if phys.air_gain == 0.0:
        return np.zeros_like(ws.t)
    band, ramp = ws._air_parts()
    env = ramp * np.exp(-ws.t / phys.air_decay_s)
    env *= band
    env *= AIR_LEVEL * phys.air_gain
    return _delay(env, phys.onset_delay_s / 2.0, ws.config.sample_rate_hz)


def _dust(ws: RenderWorkspace, phys: PhysicalParams) -> np.ndarray:
    if phys.dust_gain == 0.0:
        return np.zeros_like(ws.t)
    u_event, amps = ws._dust_parts()
    sr = ws.config.sample_rate_hz
    # per-sample Bernoulli approximation of an inhomogeneous Poisson process;
    # density/sr < 1 for any supported rate, so no probability clipping needed
    threshold = (DUST_DENSITY_HZ / sr) * np.exp(-ws.t / phys.dust_decay_s)
    # the 1e-20 floor keeps the recursive filter state out of denormal range
    # during long gaps; the high-pass removes it from the output
    train = np.where(u_event < threshold, amps, 1e-20)
    out = biquad(train, highpass_coeffs(DUST_HP_HZ, FILTER_Q, sr))
    out *= DUST_LEVEL * phys.dust_gain
    return _delay(out, phys.onset_delay_s, sr)


_COMPONENT_FNS = {"rumble": _rumble, "air": _air, "dust": _dust}


def render_component(
    kind: str,
    params: ExplosionParams,
    config: RenderConfig = RenderConfig(),
    workspace: RenderWorkspace | None = None,
) -> AudioBuffer:
    """Render one layer alone, pre-limiter and pre-normalization."""
    if kind not in _COMPONENT_FNS:
        raise ParameterError(
            f"unknown component {kind!r}; expected one of {sorted(_COMPONENT_FNS)}"
        )
    ws = workspace if workspace is not None else RenderWorkspace(config)
    phys = map_to_physical(params)
    return AudioBuffer(ws.config.sample_rate_hz, _COMPONENT_FNS[kind](ws, phys))


def render(
    params: ExplosionParams,
    config: RenderConfig = RenderConfig(),
    workspace: RenderWorkspace | None = None,
) -> AudioBuffer:
    """Render the full explosion; a pure function of (params, config)."""
    ws = workspace if workspace is not None else RenderWorkspace(config)
    cfg = ws.config
    phys = map_to_physical(params)
    mix = _rumble(ws, phys)
    mix += _air(ws, phys)
    mix += _dust(ws, phys)

    if cfg.limiter_enabled:
        np.tanh(mix, out=mix)
    if cfg.peak_normalize:
        peak = np.max(np.abs(mix))
        if peak > 0.0:
            mix *= cfg.peak_target / peak
    return AudioBuffer(cfg.sample_rate_hz, mix)
