"""HTTP facade: rendering, feature extraction, and asynchronous jobs.

The service is stateless apart from the in-memory job table.  Render and
feature requests are pure and safe under arbitrary concurrency; match and
dataset work runs on small background pools with polling endpoints.
"""

from __future__ import annotations

import io
import os
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from fastapi import FastAPI, Form, Request, Response, UploadFile
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, ValidationError
from scipy.io import wavfile

from . import matching
from .audio import AudioBuffer
from .dataset import MANIFEST_NAME, generate_dataset
from .engine import render
from .errors import ParameterError, WavFormatError
from .features import extract_features
from .params import PARAM_FIELDS, PARAM_LABELS, ExplosionParams, RenderConfig
from .wavio import quantize_pcm16, read_wav

MAX_UPLOAD_BYTES = 10 * 1024 * 1024
MAX_DURATION_S = 60.0

DEFAULT_PORT = 8080


class ParamsModel(BaseModel):
    rumble: float = Field(0.5, ge=0.0, le=1.0)
    rumble_decay: float = Field(0.5, ge=0.0, le=1.0)
    air: float = Field(0.5, ge=0.0, le=1.0)
    air_decay: float = Field(0.5, ge=0.0, le=1.0)
    dust: float = Field(0.5, ge=0.0, le=1.0)
    dust_decay: float = Field(0.5, ge=0.0, le=1.0)
    time_separation: float = Field(0.5, ge=0.0, le=1.0)
    grit_amount: float = Field(0.5, ge=0.0, le=1.0)

    def to_params(self) -> ExplosionParams:
        return ExplosionParams(**self.model_dump())


class RenderRequest(BaseModel):
    params: ParamsModel = Field(default_factory=ParamsModel)
    seed: int = Field(0, ge=0, lt=2**64)
    duration_s: float = Field(3.0, gt=0.0, le=MAX_DURATION_S)
    sample_rate_hz: int = Field(24000, ge=8000, le=192000)

    def to_config(self) -> RenderConfig:
        return RenderConfig(
            sample_rate_hz=self.sample_rate_hz,
            duration_s=self.duration_s,
            seed=self.seed,
        )


class DatasetRequest(BaseModel):
    n: int = Field(..., ge=1, le=100_000)
    seed: int = Field(0, ge=0, lt=2**64)


class JobCancelled(Exception):
    pass


@dataclass
class JobRecord:
    id: str
    kind: str
    state: str = "queued"  # queued -> running -> done | failed
    progress: float = 0.0
    result: Any = None
    error: str | None = None
    cancel_event: threading.Event = field(default_factory=threading.Event, repr=False)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "state": self.state,
            "progress": self.progress,
            "result": self.result,
            "error": self.error,
        }


class JobManager:
    def __init__(self, workers_per_kind: int = 1):
        self._jobs: dict[str, JobRecord] = {}
        self._lock = threading.Lock()
        self._pools = {
            kind: ThreadPoolExecutor(
                max_workers=workers_per_kind, thread_name_prefix=f"{kind}-worker"
            )
            for kind in ("match", "dataset")
        }

    def submit(self, kind: str, fn) -> JobRecord:
        job = JobRecord(id=uuid.uuid4().hex, kind=kind)
        with self._lock:
            self._jobs[job.id] = job

        def run():
            with self._lock:
                if job.cancel_event.is_set():
                    job.state = "failed"
                    job.error = "cancelled"
                    return
                job.state = "running"
            try:
                result = fn(job)
            except JobCancelled:
                with self._lock:
                    job.state = "failed"
                    job.error = "cancelled"
            except Exception as exc:  # report job crashes via the record
                with self._lock:
                    job.state = "failed"
                    job.error = str(exc)
            else:
                with self._lock:
                    job.state = "done"
                    job.progress = 1.0
                    job.result = result

        self._pools[kind].submit(run)
        return job

    def get(self, job_id: str) -> JobRecord | None:
        with self._lock:
            return self._jobs.get(job_id)

    def set_progress(self, job: JobRecord, value: float) -> None:
        with self._lock:
            # progress is non-decreasing by contract
            job.progress = max(job.progress, min(value, 1.0))

    def cancel(self, job_id: str) -> JobRecord | None:
        with self._lock:
            job = self._jobs.get(job_id)
            if job is not None:
                job.cancel_event.set()
            return job

    def shutdown(self):
        for pool in self._pools.values():
            pool.shutdown(wait=False, cancel_futures=True)


def _wav_bytes(buffer: AudioBuffer) -> bytes:
    bio = io.BytesIO()
    wavfile.write(bio, buffer.sample_rate_hz, quantize_pcm16(buffer.samples))
    return bio.getvalue()


def schema_payload() -> list[dict]:
    return [
        {"name": PARAM_LABELS[f], "field": f, "min": 0.0, "max": 1.0, "default": 0.5}
        for f in PARAM_FIELDS
    ]


def create_app(data_dir: str | None = None, workers: int | None = None) -> FastAPI:
    data_dir = data_dir or os.environ.get("PYRO_DATA_DIR") or "pyro_data"
    if workers is None:
        workers = int(os.environ.get("PYRO_WORKERS", "1"))
    app = FastAPI(title="pyrosynth", version="0.1.0")
    jobs = JobManager(workers_per_kind=workers)
    app.state.jobs = jobs
    app.state.data_dir = Path(data_dir)

    @app.exception_handler(ParameterError)
    async def _domain_error(request: Request, exc: ParameterError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(WavFormatError)
    async def _wav_error(request: Request, exc: WavFormatError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/schema")
    def schema():
        return schema_payload()

    @app.post("/render")
    def render_endpoint(req: RenderRequest):
        buf = render(req.params.to_params(), req.to_config())
        return Response(content=_wav_bytes(buf), media_type="audio/wav")

    @app.post("/features")
    async def features_endpoint(request: Request):
        body = await request.body()
        if len(body) > MAX_UPLOAD_BYTES:
            return JSONResponse(status_code=413, content={"detail": "body too large"})
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("application/json"):
            try:
                req = RenderRequest.model_validate_json(body)
            except ValidationError as exc:
                return JSONResponse(status_code=422, content={"detail": exc.errors()})
            buf = render(req.params.to_params(), req.to_config())
        else:
            try:
                buf = read_wav(io.BytesIO(body))
            except WavFormatError:
                return JSONResponse(
                    status_code=400, content={"detail": "body is not a readable WAV"}
                )
        return extract_features(buf).as_dict()

    @app.post("/match", status_code=202)
    async def match_endpoint(
        target: UploadFile,
        population: int = Form(matching.MatchConfig.population),
        generations: int = Form(matching.MatchConfig.generations),
        seed: int = Form(0),
        render_seed: int = Form(0),
    ):
        data = await target.read()
        if len(data) > MAX_UPLOAD_BYTES:
            return JSONResponse(status_code=413, content={"detail": "upload exceeds 10 MiB"})
        try:
            buf = read_wav(io.BytesIO(data))
        except WavFormatError:
            return JSONResponse(
                status_code=400, content={"detail": "upload is not a readable WAV"}
            )
        try:
            cfg = matching.MatchConfig(
                population=population,
                generations=generations,
                seed=seed,
                render_seed=render_seed,
            )
        except ParameterError as exc:
            return JSONResponse(status_code=422, content={"detail": str(exc)})

        def work(job: JobRecord):
            def progress(gen, total):
                if job.cancel_event.is_set():
                    raise JobCancelled()
                jobs.set_progress(job, gen / max(total, 1))

            result = matching.match_sound(buf, cfg, progress=progress)
            return {
                "best_params": {
                    f: getattr(result.best_params, f) for f in PARAM_FIELDS
                },
                "best_loss": result.best_loss,
                "evaluations": result.evaluations,
                "trace": result.trace,
            }

        job = jobs.submit("match", work)
        return {"job_id": job.id}

    @app.post("/dataset", status_code=202)
    def dataset_endpoint(req: DatasetRequest):
        out_dir = app.state.data_dir / "jobs" / uuid.uuid4().hex

        def work(job: JobRecord):
            def progress(done, total):
                if job.cancel_event.is_set():
                    raise JobCancelled()
                jobs.set_progress(job, done / max(total, 1))

            manifest = generate_dataset(req.n, req.seed, out_dir, progress=progress)
            return {
                "manifest_path": str(out_dir / MANIFEST_NAME),
                "out_dir": str(out_dir),
                "n": len(manifest.rows),
            }

        job = jobs.submit("dataset", work)
        return {"job_id": job.id}

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            return JSONResponse(status_code=404, content={"detail": "unknown job"})
        return job.to_json()

    @app.delete("/jobs/{job_id}")
    def cancel_job(job_id: str):
        job = jobs.cancel(job_id)
        if job is None:
            return JSONResponse(status_code=404, content={"detail": "unknown job"})
        return job.to_json()

    panel_dir = os.environ.get("PYRO_PANEL_DIR")
    if panel_dir and Path(panel_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/panel", StaticFiles(directory=panel_dir, html=True), name="panel")

    return app
