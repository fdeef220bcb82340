"""Command-line interface."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .dataset import generate_dataset
from .engine import render
from .features import extract_features
from .matching import MatchConfig, match_sound
from .params import PARAM_FIELDS, ExplosionParams, RenderConfig
from .service import DEFAULT_PORT, create_app
from .wavio import read_wav, write_wav


def _add_param_args(parser: argparse.ArgumentParser) -> None:
    for name in PARAM_FIELDS:
        parser.add_argument(
            f"--{name.replace('_', '-')}", type=float, default=0.5, dest=name,
            help=f"{name} control in [0, 1] (default 0.5)",
        )


def _params_from_args(args) -> ExplosionParams:
    return ExplosionParams(**{name: getattr(args, name) for name in PARAM_FIELDS})


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="pyrosynth", description="Procedural explosion synthesis tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser("render", help="render one explosion to a WAV file")
    _add_param_args(p_render)
    p_render.add_argument("--out", required=True, help="output WAV path")
    p_render.add_argument("--seed", type=int, default=0)
    p_render.add_argument("--duration", type=float, default=3.0)
    p_render.add_argument("--rate", type=int, default=24000)
    p_render.add_argument("--no-limiter", action="store_true")
    p_render.add_argument("--no-normalize", action="store_true")

    p_feat = sub.add_parser("features", help="print timbral features of a WAV as JSON")
    p_feat.add_argument("wav", help="input WAV path")

    p_match = sub.add_parser("match", help="estimate controls for a target WAV")
    p_match.add_argument("wav", help="target WAV path")
    p_match.add_argument("--population", type=int, default=MatchConfig.population)
    p_match.add_argument("--generations", type=int, default=MatchConfig.generations)
    p_match.add_argument("--seed", type=int, default=0)
    p_match.add_argument("--render-seed", type=int, default=0)
    p_match.add_argument("--out", help="write the result as JSON to this path")

    p_data = sub.add_parser("dataset", help="generate a dataset of random renders")
    p_data.add_argument("--n", type=int, required=True)
    p_data.add_argument("--seed", type=int, default=0)
    p_data.add_argument("--out", required=True, help="output directory")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument(
        "--port", type=int, default=int(os.environ.get("PYRO_PORT", DEFAULT_PORT))
    )
    p_serve.add_argument("--host", default="127.0.0.1")

    args = parser.parse_args(argv)

    if args.command == "render":
        config = RenderConfig(
            sample_rate_hz=args.rate,
            duration_s=args.duration,
            seed=args.seed,
            limiter_enabled=not args.no_limiter,
            peak_normalize=not args.no_normalize,
        )
        write_wav(render(_params_from_args(args), config), args.out)
        print(args.out)
        return 0

    if args.command == "features":
        feats = extract_features(read_wav(args.wav))
        print(json.dumps(feats.as_dict(), indent=2))
        return 0

    if args.command == "match":
        target = read_wav(args.wav)
        cfg = MatchConfig(
            population=args.population,
            generations=args.generations,
            seed=args.seed,
            render_seed=args.render_seed,
        )
        result = match_sound(target, cfg)
        payload = {
            "best_params": {f: getattr(result.best_params, f) for f in PARAM_FIELDS},
            "best_loss": result.best_loss,
            "evaluations": result.evaluations,
            "trace": result.trace,
        }
        text = json.dumps(payload, indent=2)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        print(text)
        return 0

    if args.command == "dataset":
        manifest = generate_dataset(args.n, args.seed, args.out)
        print(f"{len(manifest.rows)} files written to {args.out}")
        return 0

    if args.command == "serve":
        import uvicorn

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    return 1


if __name__ == "__main__":
    sys.exit(main())
