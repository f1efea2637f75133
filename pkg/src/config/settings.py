"""
Settings and configuration management using Pydantic.

This module provides type-safe configuration management with environment
variable support and validation. Every default used by the engine, the
analyses and the command line is read from here.
"""

from pathlib import Path
from typing import Literal, get_args
from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

LogLevel = Literal["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR"]
LOG_LEVELS = get_args(LogLevel)


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables.

    All settings can be overridden via .env file or ``GENTREE_*`` environment
    variables.
    """

    model_config = SettingsConfigDict(
        env_prefix="GENTREE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Refinement loop
    max_explore_iters: int = Field(
        5, description="Stable explore iterations before the loop stops", ge=1
    )
    min_new_configs: int = Field(
        2, description="Minimum new configurations generated per location", ge=1
    )
    seed: int = Field(0, description="Default random seed")

    # Enumeration limits
    canonicalize_cap: int = Field(
        2 ** 20, description="Max projected assignments for formula enumeration", ge=1
    )
    ground_truth_cap: int = Field(
        2 ** 22, description="Max configuration space size for exhaustive runs", ge=1
    )

    # Backends
    runner_timeout: float = Field(30.0, description="Per-execution timeout in seconds", gt=0)
    jobs: int = Field(1, description="Concurrent backend executions", ge=1, le=256)

    # Output
    log_level: LogLevel = Field("INFO", description="Loguru sink level")
    results_dir: Path = Field(Path("results"), description="Default directory for result files")

    @field_validator("results_dir", mode="before")
    @classmethod
    def ensure_path(cls, v: Path | str) -> Path:
        """Convert strings to Path objects."""
        return Path(v) if isinstance(v, str) else v

    def get_result_path(self, name: str) -> Path:
        """Get a path inside the results directory, creating the directory."""
        self.results_dir.mkdir(parents=True, exist_ok=True)
        return self.results_dir / name


@lru_cache
def get_settings() -> Settings:
    """
    Get cached settings instance.

    Returns:
        Settings: Application settings singleton
    """
    return Settings()
