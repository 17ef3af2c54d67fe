"""Request/response models for the HTTP surface."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field

from ..config import ExperimentConfig, RunConfig


class HealthResponse(BaseModel):
    status: str
    version: str


class ValidateRequest(BaseModel):
    config: RunConfig = Field(default_factory=RunConfig)


class ValidateResponse(BaseModel):
    valid: bool
    resolved: dict


class SimulateRequest(BaseModel):
    config: RunConfig = Field(default_factory=RunConfig)
    include_rounds: bool = False


class RoundRow(BaseModel):
    round: int
    alive: int
    total_residual_j: float
    consumed_j: float
    bits_to_bs: int
    num_chs: int


class SimulateResponse(BaseModel):
    summary: dict
    rounds: Optional[list[RoundRow]] = None


class ExperimentRequest(BaseModel):
    config: ExperimentConfig = Field(default_factory=ExperimentConfig)
    make_plots: bool = False


class JobSubmitted(BaseModel):
    job_id: str
    status: str


class ExperimentOutcome(BaseModel):
    cells: list[dict]
    replicates: list[dict]
    output_dir: str


class JobStatus(BaseModel):
    job_id: str
    status: str
    error: Optional[str] = None
    result: Optional[ExperimentOutcome] = None
