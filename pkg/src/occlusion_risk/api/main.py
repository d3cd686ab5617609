"""
FastAPI Application
===================

HTTP front end for the experiment workflow.

HOW TO RUN:
----------
    uv run uvicorn occlusion_risk.api.main:app --reload

You can then visit:
- http://localhost:8000/docs - Swagger UI
- http://localhost:8000/api/v1/health - Health check
- http://localhost:8000/api/v1/runs - Run a sweep plan (POST)
"""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from occlusion_risk import __version__
from occlusion_risk.api.routes import router
from occlusion_risk.utils.config import get_settings
from occlusion_risk.utils.log import configure_logging

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    settings = get_settings()
    configure_logging(settings.log_level)
    logger.info("occlusion-risk service v%s (workers=%d, output_dir=%s)", __version__, settings.workers, settings.output_dir)
    yield
    logger.info("occlusion-risk service shutting down")


app = FastAPI(
    title="Occlusion Risk",
    description="""
    **Occlusion risk analytics and V2X deployment experiments**

    Submit a sweep plan to compute the Risk of Tracking Loss (RTL) for a recorded
    scenario, sweep connected-vehicle penetration, compare information-sharing
    paradigms or run the coefficient sensitivity study.
    """,
    version=__version__,
    lifespan=lifespan,
    docs_url="/docs",
    redoc_url="/redoc",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(router)


@app.get("/", tags=["Root"])
async def root():
    return {
        "message": "Occlusion Risk API",
        "docs": "/docs",
        "health": "/api/v1/health",
    }


__all__ = ["app"]
