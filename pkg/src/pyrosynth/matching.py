"""Derivative-free sound matching.

A real-coded genetic algorithm searches the unit cube of control vectors for
the render that minimizes the multi-resolution spectral distance to a target
clip.  The render seed is fixed for the whole run so the objective is a
deterministic function of the candidate; the spectral (rather than waveform)
loss absorbs the texture mismatch between noise realizations.

Mutation adds zero-mean Gaussian noise to a random subset of genes.  The
per-gene step scale follows the surviving population: it is the better
half's standard deviation of that gene, clamped to a band around the base
sigma.  Early on this explores at the population's full spread, converged
genes get polished with fine steps, and genes still spread along a
trade-off ridge keep moving; occasional wide steps at a fixed multiple of
the base sigma guard against collapse into a wrong basin.  Fixed-scale
variants left a tail of self-matching targets unconverged within a ~2000
evaluation budget; the adaptive scale removed that tail.

All randomness comes from one SplitMix64 stream consumed in a fixed block
order (init, then per generation: tournament indices, crossover coin flips,
crossover masks, mutation gene masks, wide masks, mutation noise), so a run
is fully reproducible from its config.  Candidates are evaluated in index
order; results do not depend on how evaluations are batched.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .audio import AudioBuffer
from .engine import RenderWorkspace, render
from .errors import ParameterError
from .params import PARAM_FIELDS, ExplosionParams, RenderConfig
from .prng import SplitMix64
from .spectral import SpectralLossReference, StftConfig

N_PARAMS = len(PARAM_FIELDS)


@dataclass(frozen=True)
class MatchConfig:
    population: int = 64
    generations: int = 30
    tournament_size: int = 3
    crossover_rate: float = 0.7
    mutation_sigma: float = 0.08
    mutation_rate: float = 0.25  # per-gene probability of mutating
    wide_mutation_prob: float = 0.10  # fraction of mutations at the widened scale
    wide_mutation_scale: float = 4.0
    # adaptive per-gene scale band, as multiples of mutation_sigma
    sigma_floor_ratio: float = 0.125
    sigma_ceil_ratio: float = 4.0
    elitism: int = 1
    seed: int = 0
    render_seed: int = 0
    stft: StftConfig = field(default_factory=StftConfig)

    def __post_init__(self):
        if self.population < 1:
            raise ParameterError(f"population must be >= 1, got {self.population}")
        if self.generations < 0:
            raise ParameterError(f"generations must be >= 0, got {self.generations}")
        if not 1 <= self.tournament_size <= self.population:
            raise ParameterError(
                f"tournament_size must be in [1, population], got {self.tournament_size}"
            )
        for name in ("crossover_rate", "mutation_rate", "wide_mutation_prob"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ParameterError(f"{name} must be in [0, 1]")
        if self.mutation_sigma < 0.0:
            raise ParameterError(f"mutation_sigma must be >= 0")
        if not 0.0 <= self.sigma_floor_ratio <= self.sigma_ceil_ratio:
            raise ParameterError("sigma ratios must satisfy 0 <= floor <= ceil")
        if not 1 <= self.elitism <= self.population:
            raise ParameterError(
                f"elitism must be in [1, population], got {self.elitism}"
            )


@dataclass
class MatchResult:
    best_params: ExplosionParams
    best_loss: float
    evaluations: int
    trace: list[float]


@dataclass(frozen=True)
class SensitivityStats:
    mean: float
    max: float


def _best_order(losses: np.ndarray) -> np.ndarray:
    """Candidate indices sorted by (loss, index): stable, reproducible ties."""
    return np.lexsort((np.arange(len(losses)), losses))


def match_sound(
    target: AudioBuffer,
    cfg: MatchConfig = MatchConfig(),
    progress: "callable | None" = None,
) -> MatchResult:
    """Estimate the control vector whose render best matches ``target``.

    ``progress``, if given, is called with (generation, total_generations)
    after each generation.
    """
    duration_s = len(target) / target.sample_rate_hz
    render_cfg = RenderConfig(
        sample_rate_hz=target.sample_rate_hz,
        duration_s=duration_s,
        seed=cfg.render_seed,
    )
    reference = SpectralLossReference(target, cfg.stft)
    workspace = RenderWorkspace(render_cfg)
    rng = SplitMix64(cfg.seed)

    def fitness(vec: np.ndarray) -> float:
        params = ExplosionParams.from_array(vec)
        return reference.loss(render(params, render_cfg, workspace=workspace))

    pop = rng.uniforms(cfg.population * N_PARAMS).reshape(cfg.population, N_PARAMS)
    losses = np.array([fitness(v) for v in pop])
    evaluations = cfg.population
    trace = [float(losses[_best_order(losses)[0]])]

    n_children = cfg.population - cfg.elitism
    for gen in range(cfg.generations):
        if n_children > 0:
            t = cfg.tournament_size
            tourney = rng.integers(2 * n_children * t, cfg.population).reshape(
                2, n_children, t
            )
            do_cross = rng.uniforms(n_children) < cfg.crossover_rate
            masks = rng.uniforms(n_children * N_PARAMS).reshape(
                n_children, N_PARAMS
            ) < 0.5
            mutate = rng.uniforms(n_children * N_PARAMS).reshape(
                n_children, N_PARAMS
            ) < cfg.mutation_rate
            wide = rng.uniforms(n_children * N_PARAMS).reshape(
                n_children, N_PARAMS
            ) < cfg.wide_mutation_prob
            fine = rng.uniforms(n_children * N_PARAMS).reshape(
                n_children, N_PARAMS
            ) < cfg.fine_mutation_prob
            noise = rng.gaussians(n_children * N_PARAMS).reshape(n_children, N_PARAMS)

            order = _best_order(losses)
            rank = np.empty(cfg.population, dtype=np.int64)
            rank[order] = np.arange(cfg.population)

            children = np.empty((n_children, N_PARAMS))
            for c in range(n_children):
                pa = tourney[0, c][np.argmin(rank[tourney[0, c]])]
                pb = tourney[1, c][np.argmin(rank[tourney[1, c]])]
                if do_cross[c]:
                    children[c] = np.where(masks[c], pop[pa], pop[pb])
                else:
                    children[c] = pop[pa]
            scale = cfg.mutation_sigma * np.where(
                wide,
                cfg.wide_mutation_scale,
                np.where(fine, cfg.fine_mutation_scale, 1.0),
            )
            children += scale * noise * mutate
            np.clip(children, 0.0, 1.0, out=children)

            elite_idx = _best_order(losses)[: cfg.elitism]
            child_losses = np.array([fitness(v) for v in children])
            evaluations += n_children
            pop = np.concatenate([pop[elite_idx], children])
            losses = np.concatenate([losses[elite_idx], child_losses])
        trace.append(float(losses[_best_order(losses)[0]]))
        if progress is not None:
            progress(gen + 1, cfg.generations)

    best = _best_order(losses)[0]
    return MatchResult(
        best_params=ExplosionParams.from_array(pop[best]),
        best_loss=float(losses[best]),
        evaluations=evaluations,
        trace=trace,
    )


def perturb(params: ExplosionParams, sigma: float, seed: int) -> ExplosionParams:
    """Add clamped Gaussian noise to every control; deterministic given seed."""
    if sigma < 0:
        raise ParameterError(f"sigma must be >= 0, got {sigma}")
    noise = SplitMix64(seed).gaussians(N_PARAMS)
    vec = np.clip(params.to_array() + sigma * noise, 0.0, 1.0)
    return ExplosionParams.from_array(vec)


def sensitivity(
    params: ExplosionParams,
    sigma: float,
    n: int,
    seed: int,
    render_cfg: RenderConfig = RenderConfig(),
    stft: StftConfig = StftConfig(),
) -> SensitivityStats:
    """Spectral-loss statistics under small control perturbations.

    All renders share the render seed from ``render_cfg``, so the statistics
    isolate the effect of moving the controls.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    workspace = RenderWorkspace(render_cfg)
    base = render(params, render_cfg, workspace=workspace)
    reference = SpectralLossReference(base, stft)
    seeds = SplitMix64(seed)
    vals = []
    for _ in range(n):
        moved = perturb(params, sigma, seeds.next_raw())
        vals.append(reference.loss(render(moved, render_cfg, workspace=workspace)))
    return SensitivityStats(mean=float(np.mean(vals)), max=float(np.max(vals)))
