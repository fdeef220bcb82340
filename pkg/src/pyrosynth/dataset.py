"""Dataset generation and the CSV manifest format."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .engine import render
from .errors import ParameterError
from .params import PARAM_FIELDS, ExplosionParams, RenderConfig
from .prng import SplitMix64
from .wavio import write_wav

GENERATOR_VERSION = "1"

MANIFEST_NAME = "manifest.csv"
MANIFEST_HEADER = (
    "file,rumble,rumble_decay,air,air_decay,dust,dust_decay,time_separation,"
    "grit_amount,seed"
)


@dataclass(frozen=True)
class ManifestRow:
    file: str
    params: ExplosionParams
    seed: int


@dataclass
class DatasetManifest:
    sample_rate_hz: int
    duration_s: float
    version: str
    rows: list[ManifestRow]

    def to_csv(self) -> str:
        lines = [
            f"# sample_rate_hz={self.sample_rate_hz}",
            f"# duration_s={self.duration_s!r}",
            f"# generator_version={self.version}",
            MANIFEST_HEADER,
        ]
        for row in self.rows:
            values = ",".join(repr(getattr(row.params, f)) for f in PARAM_FIELDS)
            lines.append(f"{row.file},{values},{row.seed}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "DatasetManifest":
        meta = {}
        rows = []
        header_seen = False
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key] = value
                continue
            if not line.strip():
                continue
            if not header_seen:
                if line != MANIFEST_HEADER:
                    raise ParameterError(f"unexpected manifest header: {line!r}")
                header_seen = True
                continue
            parts = line.split(",")
            if len(parts) != len(PARAM_FIELDS) + 2:
                raise ParameterError(f"malformed manifest row: {line!r}")
            params = ExplosionParams(
                **{f: float(v) for f, v in zip(PARAM_FIELDS, parts[1:-1])}
            )
            rows.append(ManifestRow(file=parts[0], params=params, seed=int(parts[-1])))
        return cls(
            sample_rate_hz=int(meta.get("sample_rate_hz", 24000)),
            duration_s=float(meta.get("duration_s", 3.0)),
            version=meta.get("generator_version", GENERATOR_VERSION),
            rows=rows,
        )


def generate_dataset(
    n: int,
    seed: int,
    out_dir,
    config: RenderConfig = RenderConfig(),
    progress=None,
) -> DatasetManifest:
    """Render n clips with independent uniform random controls.

    Per-item controls and render seeds derive from one master stream, so the
    whole dataset (audio bytes and manifest) is reproducible from (n, seed).
    ``progress``, if given, is called with (items_done, n) after each item.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    out_dir = Path(out_dir)
    os.makedirs(out_dir, exist_ok=True)
    master = SplitMix64(seed)
    rows = []
    width = max(5, len(str(n - 1)))
    for i in range(n):
        vec = master.uniforms(len(PARAM_FIELDS))
        item_seed = master.next_raw()
        params = ExplosionParams(**{f: float(v) for f, v in zip(PARAM_FIELDS, vec)})
        item_cfg = RenderConfig(
            sample_rate_hz=config.sample_rate_hz,
            duration_s=config.duration_s,
            seed=item_seed,
            limiter_enabled=config.limiter_enabled,
            peak_normalize=config.peak_normalize,
            peak_target=config.peak_target,
        )
        name = f"explosion_{i:0{width}d}.wav"
        write_wav(render(params, item_cfg), out_dir / name)
        rows.append(ManifestRow(file=name, params=params, seed=item_seed))
        if progress is not None:
            progress(i + 1, n)
    manifest = DatasetManifest(
        sample_rate_hz=config.sample_rate_hz,
        duration_s=config.duration_s,
        version=GENERATOR_VERSION,
        rows=rows,
    )
    (out_dir / MANIFEST_NAME).write_text(manifest.to_csv(), encoding="utf-8")
    return manifest
