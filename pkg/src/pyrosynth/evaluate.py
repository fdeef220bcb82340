"""Distribution distances, rank correlation, and control-evaluation protocols.

The Fréchet and MMD distances here operate on internal log-mel statistics
embeddings, NOT on pretrained-network activations.  Their absolute values are
not comparable to numbers published for embedder-based variants of these
metrics; use them for relative comparisons between clip sets produced under
the same embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.stats import rankdata

from .audio import AudioBuffer
from .cepstrum import mel_filterbank
from .errors import ParameterError, UndefinedCorrelationError
from .features import TimbralFeatures, extract_features
from .params import PARAM_FIELDS, PARAM_LABELS, ExplosionParams
from .prng import SplitMix64
from .spectral import stft_magnitude

Renderer = Callable[[ExplosionParams], AudioBuffer]

EMBED_N_MELS = 80
EMBED_FRAME = 1024
EMBED_HOP = 256
EMBED_LOG_FLOOR = 1e-10


def spearman(a: Sequence[float], b: Sequence[float]) -> float:
    """Rank correlation: Pearson correlation of average ranks (ties get mean rank)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ParameterError(f"sequences must be 1-D and equal length")
    if len(a) < 3:
        raise ParameterError(f"need at least 3 observations, got {len(a)}")
    if np.all(a == a[0]) or np.all(b == b[0]):
        raise UndefinedCorrelationError("correlation undefined for constant sequence")
    ra = rankdata(a)
    rb = rankdata(b)
    return float(np.corrcoef(ra, rb)[0, 1])


def embed_clip(buffer: AudioBuffer) -> np.ndarray:
    """160-dim clip embedding: per-band mean and std of log-mel energies."""
    spec = stft_magnitude(buffer, EMBED_FRAME, EMBED_HOP)
    fb = mel_filterbank(
        buffer.sample_rate_hz, EMBED_FRAME, EMBED_N_MELS, 20.0, buffer.sample_rate_hz / 2
    )
    log_mel = np.log(np.maximum(spec.magnitudes**2 @ fb.T, EMBED_LOG_FLOOR))
    return np.concatenate([log_mel.mean(axis=0), log_mel.std(axis=0)])


@dataclass
class EmbeddingStats:
    """Gaussian summary (mean, covariance) of a set of clip embeddings."""

    mean: np.ndarray
    cov: np.ndarray

    @classmethod
    def from_embeddings(cls, embeddings: np.ndarray) -> "EmbeddingStats":
        embeddings = np.asarray(embeddings, dtype=float)
        if embeddings.ndim != 2 or embeddings.shape[0] < 2:
            raise ParameterError("need at least two embeddings (rows)")
        cov = np.cov(embeddings, rowvar=False)
        return cls(mean=embeddings.mean(axis=0), cov=(cov + cov.T) / 2.0)

    @classmethod
    def from_buffers(cls, buffers: Sequence[AudioBuffer]) -> "EmbeddingStats":
        return cls.from_embeddings(np.array([embed_clip(b) for b in buffers]))


def frechet_embedding_distance(a: EmbeddingStats, b: EmbeddingStats) -> float:
    """Gaussian Fréchet distance between two embedding summaries.

    |mu_a - mu_b|^2 + Tr(C_a + C_b - 2 (C_a C_b)^(1/2)), with the matrix
    square root taken by eigendecomposition of the symmetrized product and
    negative eigenvalues clamped to zero.
    """
    if a.mean.shape != b.mean.shape or a.cov.shape != b.cov.shape:
        raise ParameterError(
            f"dimension mismatch: {a.mean.shape}/{a.cov.shape} vs {b.mean.shape}/{b.cov.shape}"
        )
    diff = a.mean - b.mean
    prod = a.cov @ b.cov
    sym = (prod + prod.T) / 2.0
    eigvals = np.linalg.eigvalsh(sym)
    sqrt_trace = np.sum(np.sqrt(np.maximum(eigvals, 0.0)))
    return float(diff @ diff + np.trace(a.cov) + np.trace(b.cov) - 2.0 * sqrt_trace)


def mmd_rbf(X: np.ndarray, Y: np.ndarray, bandwidth: float | str = "median") -> float:
    """Biased (V-statistic) squared MMD with an RBF kernel.

    k(x, y) = exp(-|x - y|^2 / (2 bw^2)); bandwidth "median" uses the median
    pairwise distance over the pooled sets.  Identical sets give exactly 0.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if X.shape[0] < 2 or Y.shape[0] < 2:
        raise ParameterError("need at least two points per set")
    if X.shape[1] != Y.shape[1]:
        raise ParameterError(f"dimension mismatch: {X.shape[1]} vs {Y.shape[1]}")

    def sq_dists(A, B):
        return np.maximum(
            np.sum(A**2, axis=1)[:, None]
            + np.sum(B**2, axis=1)[None, :]
            - 2.0 * (A @ B.T),
            0.0,
        )

    dxx, dyy, dxy = sq_dists(X, X), sq_dists(Y, Y), sq_dists(X, Y)
    if bandwidth == "median":
        pooled = np.concatenate([X, Y])
        d = np.sqrt(sq_dists(pooled, pooled))
        upper = d[np.triu_indices(len(pooled), k=1)]
        bw = float(np.median(upper))
        if bw == 0.0:
            bw = 1.0
    else:
        bw = float(bandwidth)
        if bw <= 0:
            raise ParameterError(f"bandwidth must be positive, got {bandwidth}")
    gamma = 1.0 / (2.0 * bw * bw)
    return float(
        np.exp(-gamma * dxx).mean()
        + np.exp(-gamma * dyy).mean()
        - 2.0 * np.exp(-gamma * dxy).mean()
    )


@dataclass(frozen=True)
class CorrelationRow:
    parameter: str
    feature: str
    rho: float


@dataclass
class CorrelationReport:
    rows: list[CorrelationRow]

    def to_csv(self) -> str:
        lines = ["parameter,feature,rho"]
        for r in self.rows:
            lines.append(f"{r.parameter},{r.feature},{r.rho!r}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        """Aligned grid: one row per parameter, one column per feature."""
        features = list(dict.fromkeys(r.feature for r in self.rows))
        parameters = list(dict.fromkeys(r.parameter for r in self.rows))
        cells = {(r.parameter, r.feature): r.rho for r in self.rows}
        name_w = max(len(p) for p in parameters) + 2
        col_w = max(max(len(f.capitalize()) for f in features) + 2, 8)
        out = [" " * name_w + "".join(f.capitalize().rjust(col_w) for f in features)]
        for p in parameters:
            row = p.ljust(name_w)
            for f in features:
                rho = cells.get((p, f))
                row += ("-" if rho is None else f"{rho:.2f}").rjust(col_w)
            out.append(row)
        return "\n".join(out) + "\n"


def _feature_matrix(feats: list[TimbralFeatures]) -> dict[str, list[float]]:
    return {
        name: [getattr(f, name) for f in feats] for name in TimbralFeatures.names()
    }


def control_correlation_all(
    renderer_a: Renderer,
    renderer_b: Renderer,
    n: int = 100,
    seed: int = 0,
) -> CorrelationReport:
    """Feature rank-correlation between two renderers over random controls."""
    if n < 3:
        raise ParameterError(f"need n >= 3, got {n}")
    rng = SplitMix64(seed)
    vecs = rng.uniforms(n * len(PARAM_FIELDS)).reshape(n, len(PARAM_FIELDS))
    feats_a, feats_b = [], []
    for vec in vecs:
        params = ExplosionParams.from_array(vec)
        feats_a.append(extract_features(renderer_a(params)))
        feats_b.append(extract_features(renderer_b(params)))
    fa, fb = _feature_matrix(feats_a), _feature_matrix(feats_b)
    rows = [
        CorrelationRow("all", name, spearman(fa[name], fb[name]))
        for name in TimbralFeatures.names()
    ]
    return CorrelationReport(rows)


def control_correlation_single(
    param_index: int,
    base: ExplosionParams,
    renderer_a: Renderer,
    renderer_b: Renderer,
    n_steps: int = 11,
) -> CorrelationReport:
    """Sweep one control uniformly over [0, 1], others fixed at ``base``."""
    if not 0 <= param_index < len(PARAM_FIELDS):
        raise ParameterError(f"param_index must be in [0, {len(PARAM_FIELDS)}), got {param_index}")
    if n_steps < 3:
        raise ParameterError(f"need n_steps >= 3, got {n_steps}")
    field = PARAM_FIELDS[param_index]
    feats_a, feats_b = [], []
    for v in np.linspace(0.0, 1.0, n_steps):
        params = base.replace(**{field: float(v)})
        feats_a.append(extract_features(renderer_a(params)))
        feats_b.append(extract_features(renderer_b(params)))
    fa, fb = _feature_matrix(feats_a), _feature_matrix(feats_b)
    rows = [
        CorrelationRow(PARAM_LABELS[field], name, spearman(fa[name], fb[name]))
        for name in TimbralFeatures.names()
    ]
    return CorrelationReport(rows)
