"""Library settings and environment variables."""

from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from ``ADAREGRET_*`` environment variables or ``.env``."""

    model_config = SettingsConfigDict(
        env_prefix="ADAREGRET_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Artifacts
    output_directory: str = "./data/runs"
    csv_precision: int = Field(default=17, ge=1, le=17)

    # Experiments
    default_seed: int = Field(default=0, ge=0)
    max_workers: int = Field(default=4, ge=1)

    # Tolerances
    bound_tolerance: float = Field(default=1e-9, gt=0.0)
    membership_tolerance: float = Field(default=1e-9, gt=0.0)

    # Eigensolver
    eigen_max_dimension: int = Field(default=64, ge=1)
    eigen_max_sweeps: int = Field(default=64, ge=1)

    # Brute-force comparator search
    brute_force_max_states: int = Field(default=5_000_000, ge=1)

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
