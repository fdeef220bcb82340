#!/usr/bin/env python3
"""Audio-quality distance experiment.

Computes the Fréchet embedding distance and RBF-kernel MMD between two sets
of clips, plus mean mel-cepstral distortion when the sets are paired.  The
embeddings are internal log-mel statistics, so absolute values are NOT
comparable to published numbers from pretrained-embedder variants of these
metrics; compare rows against each other only.

Without --set-a/--set-b the script runs a self-contained demo: two disjoint
engine-rendered sets (control row) and engine vs band-limited noise
(contrast row).  The control row should score much lower than the contrast
row on both distribution distances.
"""

import argparse
from pathlib import Path

import numpy as np

from pyrosynth.audio import AudioBuffer
from pyrosynth.cepstrum import mcd
from pyrosynth.dataset import generate_dataset
from pyrosynth.evaluate import EmbeddingStats, embed_clip, frechet_embedding_distance, mmd_rbf
from pyrosynth.params import RenderConfig
from pyrosynth.prng import SplitMix64
from pyrosynth.wavio import read_wav


def load_set(directory: Path) -> list[AudioBuffer]:
    paths = sorted(directory.glob("*.wav"))
    if len(paths) < 2:
        raise SystemExit(f"{directory}: need at least 2 WAV files, found {len(paths)}")
    return [read_wav(p) for p in paths]


def distances(set_a, set_b, paired: bool):
    emb_a = np.array([embed_clip(b) for b in set_a])
    emb_b = np.array([embed_clip(b) for b in set_b])
    fed = frechet_embedding_distance(
        EmbeddingStats.from_embeddings(emb_a), EmbeddingStats.from_embeddings(emb_b)
    )
    mmd = mmd_rbf(emb_a, emb_b)
    mcd_val = None
    if paired:
        pairs = list(zip(set_a, set_b))
        mcd_val = float(np.mean([mcd(x, y) for x, y in pairs]))
    return fed, mmd, mcd_val


def fmt_row(name, fed, mmd, mcd_val):
    mcd_str = f"{mcd_val:8.3f}" if mcd_val is not None else "       -"
    return f"{name:<28s} {fed:10.3f} {mmd:10.5f} {mcd_str}"


def band_noise_set(n: int, sr: int = 24000, duration_s: float = 3.0):
    from pyrosynth.filters import bandpass_coeffs, biquad

    out = []
    rng = SplitMix64(555)
    coeffs = bandpass_coeffs(1200.0, 0.4, sr)
    for _ in range(n):
        noise = 2.0 * rng.uniforms(round(sr * duration_s)) - 1.0
        shaped = biquad(noise, coeffs)
        peak = np.max(np.abs(shaped))
        out.append(AudioBuffer(sr, 0.9 * shaped / peak))
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--set-a", help="directory of WAV clips")
    parser.add_argument("--set-b", help="directory of WAV clips")
    parser.add_argument("--paired", action="store_true", help="sets are index-paired; also report MCD")
    parser.add_argument("--demo-n", type=int, default=50, help="clips per set in demo mode")
    parser.add_argument("--workdir", default="quality_eval_work", help="demo-mode scratch directory")
    parser.add_argument("--csv", help="also write the table as CSV to this path")
    args = parser.parse_args()

    header = f"{'comparison':<28s} {'Frechet':>10s} {'MMD':>10s} {'MCD':>8s}"
    print(header)
    print("-" * len(header))
    csv_rows = ["comparison,frechet,mmd,mcd"]

    def emit(name, fed, mmd, mcd_val):
        print(fmt_row(name, fed, mmd, mcd_val))
        csv_rows.append(f"{name},{fed!r},{mmd!r},{'' if mcd_val is None else repr(mcd_val)}")

    def finish(code: int) -> int:
        if args.csv:
            Path(args.csv).write_text("\n".join(csv_rows) + "\n", encoding="utf-8")
        return code

    if args.set_a and args.set_b:
        set_a = load_set(Path(args.set_a))
        set_b = load_set(Path(args.set_b))
        emit(f"{Path(args.set_a).name} vs {Path(args.set_b).name}", *distances(set_a, set_b, args.paired))
        return finish(0)

    work = Path(args.workdir)
    n = args.demo_n
    generate_dataset(n, seed=91, out_dir=work / "engine_a")
    generate_dataset(n, seed=92, out_dir=work / "engine_b")
    set_a = load_set(work / "engine_a")
    set_b = load_set(work / "engine_b")
    noise = band_noise_set(n)

    control = distances(set_a, set_b, paired=False)
    contrast = distances(set_a, noise, paired=False)
    emit("engine vs engine (control)", *control)
    emit("engine vs band noise", *contrast)
    ok = contrast[0] > control[0] and contrast[1] > control[1]
    print(f"\ncontrast exceeds control on both distances: {ok}")
    return finish(0 if ok else 1)


if __name__ == "__main__":
    raise SystemExit(main())
