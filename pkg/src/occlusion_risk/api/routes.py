"""
API Routes
==========

    POST /api/v1/runs     execute a sweep plan synchronously and report its outputs
    GET  /api/v1/health   service status

Runs are CPU-bound, so the run handler is a plain ``def``; FastAPI executes it in its
worker thread pool.

ERROR MAPPING:
--------------
    InputError              422  (missing or invalid trajectory/map/config)
    other library errors    500
"""

import logging
import time
from pathlib import Path

from fastapi import APIRouter, Depends, HTTPException

from occlusion_risk import __version__
from occlusion_risk.api.dependencies import get_workflow
from occlusion_risk.errors import InputError, OcclusionRiskError
from occlusion_risk.graph.workflow import run_plan
from occlusion_risk.models.api_models import ErrorResponse, HealthResponse, RunRequest, RunResponse

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1", tags=["Experiments"])


@router.post(
    "/runs",
    response_model=RunResponse,
    responses={
        200: {"description": "Run finished and outputs were written"},
        422: {"model": ErrorResponse, "description": "Unusable input files or plan"},
        500: {"model": ErrorResponse, "description": "Run failed"},
    },
)
def start_run(request: RunRequest, workflow=Depends(get_workflow)) -> RunResponse:
    """Run one experiment end to end and return where its outputs went."""
    start_time = time.time()
    try:
        final = run_plan(request.to_plan(), workers=request.workers, workflow=workflow)
    except InputError as exc:
        logger.warning("rejected run: %s", exc)
        raise HTTPException(
            status_code=422,
            detail=ErrorResponse(error="invalid_input", message=str(exc), details=exc.details()).model_dump(),
        ) from exc
    except OcclusionRiskError as exc:
        logger.error("run failed: %s", exc)
        raise HTTPException(
            status_code=500,
            detail=ErrorResponse(error=type(exc).__name__, message=str(exc)).model_dump(),
        ) from exc

    manifest_path = Path(final["manifest_path"])
    output_dir = manifest_path.parent
    files = sorted({Path(f).relative_to(output_dir).as_posix() for f in final.get("files", [])})
    return RunResponse(
        experiment=request.experiment.value,
        output_dir=str(output_dir),
        manifest_path=str(manifest_path),
        files=files,
        summary=final.get("summary", {}),
        duration_seconds=round(time.time() - start_time, 3),
    )


@router.get("/health", response_model=HealthResponse)
async def health_check() -> HealthResponse:
    return HealthResponse(status="healthy", version=__version__)


__all__ = ["router"]
