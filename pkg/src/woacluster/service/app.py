"""FastAPI application exposing validation, single runs, and experiment jobs.

Single simulations run synchronously in the request; experiments are
submitted as jobs and polled at GET /experiments/{job_id}.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..experiment import run_one
from ..simulation import summary_dict
from .jobs import DONE, JobStore
from .models import (
    ExperimentOutcome,
    ExperimentRequest,
    HealthResponse,
    JobStatus,
    JobSubmitted,
    RoundRow,
    SimulateRequest,
    SimulateResponse,
    ValidateRequest,
    ValidateResponse,
)


def create_app(job_store: JobStore | None = None) -> FastAPI:
    app = FastAPI(
        title="woacluster",
        version=__version__,
        description="Round-based WSN energy simulator with pluggable CH selection",
    )
    store = job_store or JobStore()

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post("/validate", response_model=ValidateResponse)
    def validate(request: ValidateRequest):
        return ValidateResponse(valid=True, resolved=request.config.resolved())

    @app.post("/simulations", response_model=SimulateResponse)
    def simulate(request: SimulateRequest):
        result = run_one(request.config)
        rounds = None
        if request.include_rounds:
            rounds = [
                RoundRow(
                    round=m.round,
                    alive=m.alive,
                    total_residual_j=m.total_residual,
                    consumed_j=m.consumed_cumulative,
                    bits_to_bs=m.bits_to_bs,
                    num_chs=len(m.ch_ids),
                )
                for m in result.rounds
            ]
        return SimulateResponse(summary=summary_dict(result), rounds=rounds)

    @app.post("/experiments", response_model=JobSubmitted, status_code=202)
    def submit_experiment(request: ExperimentRequest):
        record = store.submit(request.config, make_plots=request.make_plots)
        return JobSubmitted(job_id=record.job_id, status=record.status)

    @app.get("/experiments/{job_id}", response_model=JobStatus)
    def job_status(job_id: str):
        record = store.get(job_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
        result = None
        if record.status == DONE:
            result = ExperimentOutcome(
                cells=record.cells,
                replicates=record.replicates,
                output_dir=record.output_dir or "",
            )
        return JobStatus(
            job_id=record.job_id, status=record.status, error=record.error, result=result
        )

    return app


app = create_app()
