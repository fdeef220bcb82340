"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with -s to see them inline).

The matching criterion takes several minutes; everything else is fast.
"""

import concurrent.futures
import io
import math
import time

import numpy as np
import pytest
from fastapi.testclient import TestClient
from scipy.linalg import sqrtm

from pyrosynth.dataset import generate_dataset
from pyrosynth.engine import RenderWorkspace, render
from pyrosynth.evaluate import EmbeddingStats, frechet_embedding_distance, mmd_rbf, spearman
from pyrosynth.features import extract_features
from pyrosynth.matching import MatchConfig, match_sound
from pyrosynth.params import ExplosionParams, RenderConfig
from pyrosynth.prng import SplitMix64
from pyrosynth.service import create_app
from pyrosynth.spectral import SpectralLossReference, StftConfig, multires_spectral_loss
from pyrosynth.wavio import read_wav

from test_evaluate import spearman_brute
from test_spectral import brute_force_single_resolution_loss


def report(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {name}" + (f" -- {detail}" if detail else ""))
    assert ok, f"{name}: {detail}"


def test_determinism_20_pairs_under_5s():
    rng = SplitMix64(101)
    t0 = time.perf_counter()
    for _ in range(20):
        params = ExplosionParams.from_array(rng.uniforms(8))
        seed = rng.next_raw()
        cfg = RenderConfig(seed=seed)
        a = render(params, cfg)
        b = render(params, cfg)
        assert len(a) == 72000
        assert np.array_equal(a.samples, b.samples)
    elapsed = time.perf_counter() - t0
    report(
        "determinism: 20 random (params, seed) pairs bit-identical",
        elapsed < 5.0,
        f"{elapsed:.2f} s (< 5 s)",
    )


def test_dataset_pipeline_200_files(tmp_path):
    t0 = time.perf_counter()
    manifest = generate_dataset(200, seed=2026, out_dir=tmp_path / "a")
    gen_elapsed = time.perf_counter() - t0

    wavs = sorted((tmp_path / "a").glob("*.wav"))
    sizes_ok = len(wavs) == 200 and len(manifest.rows) == 200
    for w in wavs:
        buf = read_wav(w)
        sizes_ok = sizes_ok and len(buf) == 72000 and buf.sample_rate_hz == 24000

    generate_dataset(200, seed=2026, out_dir=tmp_path / "b")
    manifest_identical = (tmp_path / "a" / "manifest.csv").read_bytes() == (
        tmp_path / "b" / "manifest.csv"
    ).read_bytes()
    audio_identical = all(
        fa.read_bytes() == fb.read_bytes()
        for fa, fb in zip(wavs, sorted((tmp_path / "b").glob("*.wav")))
    )
    report(
        "dataset: 200 x 72000-sample 24 kHz WAVs, byte-reproducible",
        sizes_ok and manifest_identical and audio_identical and gen_elapsed < 60.0,
        f"generation {gen_elapsed:.1f} s (< 60 s)",
    )


def test_spectral_loss_oracle():
    rng = SplitMix64(202)
    cfg64 = StftConfig(fft_sizes=(64,))
    worst_rel = 0.0
    for i in range(10):
        pa = ExplosionParams.from_array(rng.uniforms(8))
        pb = ExplosionParams.from_array(rng.uniforms(8))
        x = render(pa, RenderConfig(seed=rng.next_raw(), duration_s=0.5))
        y = render(pb, RenderConfig(seed=rng.next_raw(), duration_s=0.5))
        got = multires_spectral_loss(x, y, cfg64)
        want = brute_force_single_resolution_loss(x, y, 64)
        worst_rel = max(worst_rel, abs(got - want) / want)
        assert multires_spectral_loss(x, x, cfg64) == 0.0
        assert got == multires_spectral_loss(y, x, cfg64)
    report(
        "spectral loss: direct-DFT oracle, identity, symmetry",
        worst_rel < 1e-6,
        f"worst relative deviation {worst_rel:.2e} (< 1e-6)",
    )


def test_mcd_properties():
    from pyrosynth.audio import AudioBuffer
    from pyrosynth.cepstrum import CepstrumConfig, mcd

    from test_cepstrum import reference_mel_cepstra

    x = render(ExplosionParams(rumble=0.7, air=0.5, dust=0.3), RenderConfig(seed=31, duration_s=1.0))
    y = render(ExplosionParams(rumble=0.2, air=0.8, dust=0.6), RenderConfig(seed=32, duration_s=1.0))
    half = AudioBuffer(x.sample_rate_hz, 0.5 * x.samples)

    identity_ok = mcd(x, x) == 0.0
    gain_ok = mcd(x, half) < 1e-8

    cfg = CepstrumConfig()
    ca = reference_mel_cepstra(x.samples, x.sample_rate_hz, cfg)
    cb = reference_mel_cepstra(y.samples, y.sample_rate_hz, cfg)
    want = float((10.0 / np.log(10.0)) * np.mean(np.sqrt(2.0 * np.sum((ca - cb) ** 2, axis=1))))
    got = mcd(x, y, cfg)
    oracle_rel = abs(got - want) / want
    report(
        "mcd: identity, gain invariance, pipeline oracle",
        identity_ok and gain_ok and oracle_rel < 1e-6,
        f"mcd(x,x)={mcd(x, x)}, mcd(x,0.5x)={mcd(x, half):.2e}, oracle rel {oracle_rel:.2e}",
    )


def test_matching_self_recovery_20_targets():
    t_all = time.perf_counter()

    base_cfg = RenderConfig(seed=777)
    ws = RenderWorkspace(base_cfg)
    rng = SplitMix64(4242)
    pair_losses = []
    for _ in range(50):
        pa = ExplosionParams.from_array(rng.uniforms(8))
        pb = ExplosionParams.from_array(rng.uniforms(8))
        ref = SpectralLossReference(render(pa, base_cfg, workspace=ws))
        pair_losses.append(ref.loss(render(pb, base_cfg, workspace=ws)))
    baseline = float(np.mean(pair_losses))
    threshold = 0.1 * baseline

    master = SplitMix64(20260810)
    results = []
    all_mono = True
    for i in range(20):
        theta = ExplosionParams.from_array(master.uniforms(8))
        render_seed = master.next_raw()
        target = render(theta, RenderConfig(seed=render_seed))
        res = match_sound(target, MatchConfig(seed=i, render_seed=render_seed))
        assert res.evaluations <= 2000, "budget exceeded"
        results.append(res.best_loss)
        all_mono = all_mono and all(a >= b for a, b in zip(res.trace, res.trace[1:]))
    elapsed = time.perf_counter() - t_all
    worst = max(results)
    report(
        "matching: 20 self-recovery targets within budget 2000 evals",
        worst <= threshold and all_mono and elapsed < 600.0,
        f"worst best_loss {worst:.3f} <= {threshold:.3f} (10% of baseline {baseline:.3f}), "
        f"traces monotone: {all_mono}, {elapsed:.0f} s (< 600 s)",
    )


def test_control_liveness_sweeps():
    cfg = RenderConfig(seed=123)
    ws = RenderWorkspace(cfg)
    steps = np.linspace(0.0, 1.0, 11)

    def sweep_rho(field, feature):
        vals = []
        for v in steps:
            params = ExplosionParams(**{field: float(v)})
            vals.append(getattr(extract_features(render(params, cfg, workspace=ws)), feature))
        return spearman(steps, vals)

    rhos = {
        ("rumble", "boominess", 0.8): sweep_rho("rumble", "boominess"),
        ("air", "brightness", 0.6): sweep_rho("air", "brightness"),
        ("dust", "roughness", 0.6): sweep_rho("dust", "roughness"),
        ("rumble_decay", "depth", 0.5): sweep_rho("rumble_decay", "depth"),
    }
    ok = all(rho >= thr for (_, _, thr), rho in rhos.items())
    detail = ", ".join(f"{f}->{feat} {rho:+.2f} (>= {thr})" for (f, feat, thr), rho in rhos.items())
    report("control liveness: 11-point sweeps", ok, detail)


def test_statistics_oracles():
    rng = np.random.default_rng(99)
    worst = 0.0
    checked = 0
    while checked < 100:
        n = int(rng.integers(3, 40))
        a = rng.integers(0, 8, n).astype(float) if checked % 2 else rng.normal(size=n)
        b = rng.integers(0, 8, n).astype(float) if checked % 3 else rng.normal(size=n)
        if np.all(a == a[0]) or np.all(b == b[0]):
            continue
        worst = max(worst, abs(spearman(a, b) - spearman_brute(list(a), list(b))))
        checked += 1
    spearman_ok = worst < 1e-9

    X = np.array([[0.0], [0.0], [0.0]])
    Y = np.array([[1.0], [1.0], [1.0]])
    hand = (9 * math.exp(0.0) / 9) + (9 * math.exp(0.0) / 9) - 2 * (9 * math.exp(-0.5) / 9)
    mmd_ok = abs(mmd_rbf(X, Y, bandwidth=1.0) - hand) < 1e-9 and mmd_rbf(X, X) == 0.0

    rg = np.random.default_rng(7)
    mu_a, mu_b = rg.normal(size=4), rg.normal(size=4)
    sa, sb = rg.uniform(0.5, 2.0, 4), rg.uniform(0.5, 2.0, 4)
    diag_got = frechet_embedding_distance(
        EmbeddingStats(mu_a, np.diag(sa)), EmbeddingStats(mu_b, np.diag(sb))
    )
    diag_want = float(np.sum((mu_a - mu_b) ** 2) + np.sum((np.sqrt(sa) - np.sqrt(sb)) ** 2))
    A, B = rg.normal(size=(4, 4)), rg.normal(size=(4, 4))
    cov_a, cov_b = A @ A.T + 0.1 * np.eye(4), B @ B.T + 0.1 * np.eye(4)
    eig_got = frechet_embedding_distance(EmbeddingStats(mu_a, cov_a), EmbeddingStats(mu_b, cov_b))
    prod = cov_a @ cov_b
    eig_want = float(
        np.sum((mu_a - mu_b) ** 2)
        + np.trace(cov_a + cov_b - 2 * np.real(sqrtm((prod + prod.T) / 2)))
    )
    frechet_ok = abs(diag_got - diag_want) < 1e-10 and abs(eig_got - eig_want) < 1e-8

    report(
        "statistics oracles: spearman, mmd, frechet",
        spearman_ok and mmd_ok and frechet_ok,
        f"spearman worst {worst:.1e} (< 1e-9), mmd/frechet oracles agree",
    )


def test_service_latency_and_concurrency(tmp_path):
    app = create_app(data_dir=str(tmp_path))
    body = {"params": {"rumble": 0.6, "air": 0.5, "dust": 0.4}, "seed": 9, "duration_s": 3.0}
    with TestClient(app) as client:
        client.post("/render", json=body)  # warm-up
        times = []
        for _ in range(20):
            t0 = time.perf_counter()
            r = client.post("/render", json=body)
            times.append(time.perf_counter() - t0)
            assert r.status_code == 200
        p50 = sorted(times)[len(times) // 2]

        with concurrent.futures.ThreadPoolExecutor(max_workers=16) as pool:
            bodies = list(pool.map(lambda _: client.post("/render", json=body).content, range(16)))
        identical = all(b == bodies[0] for b in bodies)
    app.state.jobs.shutdown()
    report(
        "service: /render p50 latency and 16-way identical burst",
        p50 < 0.1 and identical,
        f"p50 {p50*1e3:.1f} ms (< 100 ms), burst identical: {identical}",
    )
