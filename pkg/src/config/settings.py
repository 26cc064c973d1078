"""Application settings and configuration.

This module defines runtime configuration for the EQK toolkit. Experiment
parameters live in src.config.experiment; these settings only cover how
the toolkit runs (where artifacts go, logging, threads, SVM defaults).
"""

import logging
from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings.

    Args:
        app_name: Application name
        version: Toolkit version
        storage_dir: Root directory for stored artifacts
        log_level: Logging level
        threads: Worker threads for independent evaluations
        svm_c: Default SVM regularization constant
        svm_tol: Default SMO KKT tolerance
    """

    app_name: str = "EQK Toolkit"
    version: str = "0.1.0"

    storage_dir: str = "./artifacts"

    log_level: str = "INFO"

    threads: int = Field(default=1, ge=1)

    svm_c: float = Field(default=1.0, gt=0)
    svm_tol: float = Field(default=1e-5, gt=0)

    model_config = SettingsConfigDict(
        env_prefix="EQK_",
        env_file=".env",
        env_file_encoding="utf-8",
    )


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance.

    Returns:
        Application settings
    """
    return Settings()


def setup_logging(settings: Settings, verbose: bool = False) -> None:
    """Configure logging based on settings.

    Args:
        settings: Application settings
        verbose: Force DEBUG level regardless of settings
    """
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level.upper())
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
