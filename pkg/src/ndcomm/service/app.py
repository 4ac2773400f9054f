"""FastAPI application exposing every verifier and solver as an endpoint."""

from __future__ import annotations

import time

from fastapi import FastAPI, HTTPException

from .. import VERSION_STRING, __version__
from ..errors import BudgetExceededError
from . import runs, schemas


def _envelope(runner, request) -> schemas.ReportEnvelope:
    start = time.perf_counter()
    try:
        report = runner(request)
    except (BudgetExceededError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return schemas.ReportEnvelope(
        report=report,
        failure_count=len(report["failures"]),
        duration_seconds=time.perf_counter() - start,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="ndcomm lab service", version=__version__)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": VERSION_STRING}

    @app.post("/verify", response_model=schemas.ReportEnvelope)
    def verify(request: schemas.VerifyRequest):
        return _envelope(runs.run_verify, request)

    @app.post("/bounds", response_model=schemas.ReportEnvelope)
    def bounds(request: schemas.BoundsRequest):
        return _envelope(runs.run_bounds, request)

    @app.post("/cover", response_model=schemas.ReportEnvelope)
    def cover(request: schemas.CoverRequest):
        return _envelope(runs.run_cover, request)

    @app.post("/clique", response_model=schemas.ReportEnvelope)
    def clique(request: schemas.CliqueRequest):
        return _envelope(runs.run_clique, request)

    @app.post("/polycheck", response_model=schemas.ReportEnvelope)
    def polycheck(request: schemas.PolycheckRequest):
        return _envelope(runs.run_polycheck, request)

    return app


app = create_app()
