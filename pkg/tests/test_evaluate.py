import math

import numpy as np
import pytest
from scipy.linalg import sqrtm

from pyrosynth.engine import RenderWorkspace, render
from pyrosynth.errors import ParameterError, UndefinedCorrelationError
from pyrosynth.evaluate import (
    CorrelationReport,
    EmbeddingStats,
    control_correlation_all,
    control_correlation_single,
    embed_clip,
    frechet_embedding_distance,
    mmd_rbf,
    spearman,
)
from pyrosynth.params import ExplosionParams, RenderConfig


def rank_average_brute(values):
    """Average ranks via explicit sorting loops (oracle)."""
    n = len(values)
    order = sorted(range(n), key=lambda i: values[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        mean_rank = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks


def pearson_brute(a, b):
    n = len(a)
    ma = sum(a) / n
    mb = sum(b) / n
    cov = sum((x - ma) * (y - mb) for x, y in zip(a, b))
    va = sum((x - ma) ** 2 for x in a)
    vb = sum((y - mb) ** 2 for y in b)
    return cov / math.sqrt(va * vb)


def spearman_brute(a, b):
    return pearson_brute(rank_average_brute(a), rank_average_brute(b))


def test_spearman_trivial_cases():
    assert spearman([1, 2, 3], [1, 2, 3]) == pytest.approx(1.0, abs=1e-12)
    assert spearman([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0, abs=1e-12)


def test_spearman_tie_case():
    assert spearman([1, 2, 2], [1, 2, 3]) == pytest.approx(0.8660, abs=1e-4)


def test_spearman_matches_brute_force_with_ties():
    rng = np.random.default_rng(0)
    for trial in range(100):
        n = int(rng.integers(3, 25))
        a = rng.integers(0, 6, n).astype(float)  # integer values force ties
        b = rng.normal(size=n)
        if np.all(a == a[0]):
            continue
        assert spearman(a, b) == pytest.approx(spearman_brute(list(a), list(b)), abs=1e-9)


def test_spearman_monotone_transform_invariance():
    rng = np.random.default_rng(1)
    a = rng.normal(size=20)
    b = rng.normal(size=20)
    assert spearman(np.exp(a), b) == pytest.approx(spearman(a, b), abs=1e-12)


def test_spearman_errors():
    with pytest.raises(UndefinedCorrelationError):
        spearman([1.0, 1.0, 1.0], [1, 2, 3])
    with pytest.raises(ParameterError):
        spearman([1, 2], [1, 2])


def test_mmd_identical_sets_is_zero():
    X = np.random.default_rng(2).normal(size=(10, 4))
    assert mmd_rbf(X, X, bandwidth=1.0) == 0.0
    assert mmd_rbf(X, X) == 0.0  # median heuristic path


def test_mmd_toy_sets_match_hand_kernel_sums():
    X = np.array([[0.0], [0.0], [0.0]])
    Y = np.array([[1.0], [1.0], [1.0]])
    got = mmd_rbf(X, Y, bandwidth=1.0)
    # explicit kernel sums: k(x,y) = exp(-d^2 / (2 bw^2))
    kxx = sum(math.exp(-0.0 / 2) for _ in range(9)) / 9
    kyy = kxx
    kxy = sum(math.exp(-1.0 / 2) for _ in range(9)) / 9
    assert got == pytest.approx(kxx + kyy - 2 * kxy, abs=1e-9)
    assert got == pytest.approx(2 - 2 * math.exp(-0.5), abs=1e-9)


def test_mmd_separated_sets_larger_than_mixed():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(20, 3))
    Y = rng.normal(size=(20, 3)) + 5.0
    Z = rng.normal(size=(20, 3))
    assert mmd_rbf(X, Y) > mmd_rbf(X, Z)


def test_mmd_validation():
    X = np.zeros((3, 2))
    with pytest.raises(ParameterError):
        mmd_rbf(X, np.zeros((1, 2)))
    with pytest.raises(ParameterError):
        mmd_rbf(X, np.zeros((3, 3)))
    with pytest.raises(ParameterError):
        mmd_rbf(X, X, bandwidth=0.0)


def test_frechet_identical_zero():
    stats = EmbeddingStats(mean=np.array([1.0, 2.0]), cov=np.eye(2))
    assert frechet_embedding_distance(stats, stats) == pytest.approx(0.0, abs=1e-12)


def test_frechet_diagonal_closed_form():
    rng = np.random.default_rng(4)
    mu_a, mu_b = rng.normal(size=4), rng.normal(size=4)
    sa, sb = rng.uniform(0.5, 2.0, 4), rng.uniform(0.5, 2.0, 4)
    a = EmbeddingStats(mean=mu_a, cov=np.diag(sa))
    b = EmbeddingStats(mean=mu_b, cov=np.diag(sb))
    want = np.sum((mu_a - mu_b) ** 2) + np.sum((np.sqrt(sa) - np.sqrt(sb)) ** 2)
    assert frechet_embedding_distance(a, b) == pytest.approx(want, rel=1e-12)


def test_frechet_matches_independent_sqrtm_oracle():
    rng = np.random.default_rng(5)
    A = rng.normal(size=(4, 4))
    B = rng.normal(size=(4, 4))
    cov_a = A @ A.T + 0.1 * np.eye(4)
    cov_b = B @ B.T + 0.1 * np.eye(4)
    mu_a, mu_b = rng.normal(size=4), rng.normal(size=4)
    got = frechet_embedding_distance(
        EmbeddingStats(mu_a, cov_a), EmbeddingStats(mu_b, cov_b)
    )
    prod = cov_a @ cov_b
    sym = (prod + prod.T) / 2
    root = sqrtm(sym)
    want = float(np.sum((mu_a - mu_b) ** 2) + np.trace(cov_a + cov_b - 2 * np.real(root)))
    assert got == pytest.approx(want, abs=1e-8)


def test_frechet_dimension_mismatch():
    a = EmbeddingStats(np.zeros(3), np.eye(3))
    b = EmbeddingStats(np.zeros(4), np.eye(4))
    with pytest.raises(ParameterError):
        frechet_embedding_distance(a, b)


def test_embedding_stats_symmetric_cov():
    rng = np.random.default_rng(6)
    stats = EmbeddingStats.from_embeddings(rng.normal(size=(12, 5)))
    assert np.array_equal(stats.cov, stats.cov.T)
    assert np.min(np.linalg.eigvalsh(stats.cov)) > -1e-10


def test_embed_clip_dimension():
    buf = render(ExplosionParams(), RenderConfig(seed=1, duration_s=0.5))
    emb = embed_clip(buf)
    assert emb.shape == (160,)


def _renderer(seed, duration_s=0.5):
    cfg = RenderConfig(seed=seed, duration_s=duration_s)
    ws = RenderWorkspace(cfg)
    return lambda params: render(params, cfg, workspace=ws)


def test_correlation_all_same_renderer_is_one():
    r = _renderer(42)
    report = control_correlation_all(r, r, n=8, seed=0)
    assert len(report.rows) == 4
    assert all(row.parameter == "all" for row in report.rows)
    assert all(row.rho == pytest.approx(1.0, abs=1e-12) for row in report.rows)


def test_correlation_all_texture_stability_across_render_seeds():
    # features should track the controls, not the noise realization
    report = control_correlation_all(_renderer(11, 1.0), _renderer(22, 1.0), n=12, seed=5)
    assert all(row.rho >= 0.9 for row in report.rows)


def test_correlation_all_constant_renderer_errors():
    r = _renderer(42)
    silent = lambda params: render(
        ExplosionParams(rumble=0, air=0, dust=0), RenderConfig(seed=0, duration_s=0.5)
    )
    with pytest.raises(UndefinedCorrelationError):
        control_correlation_all(r, silent, n=8, seed=0)


def test_correlation_single_same_renderer_is_one():
    r = _renderer(7)
    report = control_correlation_single(0, ExplosionParams(), r, r, n_steps=5)
    assert all(row.rho == pytest.approx(1.0, abs=1e-12) for row in report.rows)
    assert all(row.parameter == "Rumble" for row in report.rows)


def test_correlation_single_validation():
    r = _renderer(7)
    with pytest.raises(ParameterError):
        control_correlation_single(0, ExplosionParams(), r, r, n_steps=2)
    with pytest.raises(ParameterError):
        control_correlation_single(8, ExplosionParams(), r, r)


def test_report_formats():
    report = control_correlation_single(2, ExplosionParams(), _renderer(3), _renderer(3), n_steps=3)
    csv = report.to_csv()
    assert csv.startswith("parameter,feature,rho")
    assert "Air" in csv
    text = report.to_text()
    assert "Boominess" in text and "Depth" in text
    assert text.count("\n") >= 2
