"""
API Request/Response Models
===========================

Pydantic models for the HTTP service. A run request is a sweep plan sent as JSON;
paths in it are resolved on the server.

Example request:
    {
        "scenario_path": "data/crossing.csv",
        "map_path": "data/crossing_map.json",
        "experiment": "penetration_sweep",
        "penetration_rates": [0, 0.5, 1],
        "repetitions": 5,
        "base_seed": 1,
        "output_dir": "out/crossing"
    }
"""

from typing import Any, Optional

from pydantic import BaseModel, Field

from occlusion_risk.models.plan import SweepPlan


class RunRequest(SweepPlan):
    """A sweep plan plus service-side execution options."""

    workers: Optional[int] = Field(
        default=None,
        ge=1,
        description="Thread workers for Monte Carlo draws (defaults to the process setting)",
    )

    def to_plan(self) -> SweepPlan:
        return SweepPlan.model_validate(self.model_dump(exclude={"workers"}))


class RunResponse(BaseModel):
    """Where a finished run wrote its outputs."""

    experiment: str = Field(description="Experiment kind that ran")
    output_dir: str = Field(description="Directory holding the CSV outputs and manifest")
    manifest_path: str = Field(description="Path of manifest.json")
    files: list[str] = Field(default_factory=list, description="Output files, relative to output_dir")
    summary: dict[str, Any] = Field(default_factory=dict, description="Headline numbers of the run")
    duration_seconds: float = Field(description="Wall-clock time of the run")


class HealthResponse(BaseModel):
    status: str = Field(description="Service status (healthy, degraded, unhealthy)")
    version: str = Field(description="Application version")


class ErrorResponse(BaseModel):
    """
    Standard error response format.

    ``details`` carries file/row/column context for input errors.
    """

    error: str = Field(description="Error type/code")
    message: str = Field(description="Human-readable error message")
    details: Optional[dict] = Field(default=None, description="Additional error context")


__all__ = ["RunRequest", "RunResponse", "HealthResponse", "ErrorResponse"]
