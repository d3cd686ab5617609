"""
Configuration Management Module
================================

Process-level settings (log verbosity, worker count, default output location).

Experiment parameters do NOT live here: the risk coefficients and sweep settings are part
of a run and travel with it in ``RiskConfig`` / ``RunConfig`` so that every output file can
be traced back to the exact configuration that produced it.

HOW IT WORKS:
-------------
1. Load a ``.env`` file using python-dotenv
2. ``Settings`` reads ``OCCLUSION_RISK_*`` environment variables and validates them
3. Access settings anywhere via ``get_settings()``
"""

from functools import lru_cache

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables from .env file
load_dotenv()


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables.

    Example:
        OCCLUSION_RISK_LOG_LEVEL=DEBUG occlusion-risk run plan.json
    """

    model_config = SettingsConfigDict(
        env_prefix="OCCLUSION_RISK_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR)"
    )

    workers: int = Field(
        default=1,
        ge=1,
        description="Thread workers used for Monte Carlo draws (1 = sequential)"
    )

    output_dir: str = Field(
        default="outputs",
        description="Default output directory when a plan does not name one"
    )

    default_repetitions: int = Field(
        default=20,
        ge=1,
        description="Monte Carlo repetitions when a plan does not name them"
    )


@lru_cache()
def get_settings() -> Settings:
    """
    Get application settings (cached).

    Returns:
        Settings: Process configuration object

    Example:
        >>> get_settings().log_level
        'INFO'
    """
    return Settings()


__all__ = ["Settings", "get_settings"]
