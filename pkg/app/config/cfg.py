"""
Application configuration management.

This module provides centralized configuration using pydantic-settings, so
every tunable (log output, search budget, fixture location) can be set from
the environment or a ``.env`` file.
"""

from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application settings with environment variable support.

    Defaults suit interactive use; tests and batch runs override through
    environment variables such as ``LOG_LEVEL`` or ``SEARCH_BUDGET``.
    """

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", case_sensitive=False, extra="ignore")

    # Application settings
    app_name: str = Field(default="cubechains", description="Application name")
    app_version: str = Field(default="0.1.0", description="Application version")

    # Logging settings
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="WARNING", description="Logging level"
    )
    log_format: Literal["text", "json"] = Field(default="text", description="Log format")

    # Computation settings
    fixtures_dir: Path = Field(default=Path("fixtures"), description="Directory for persisted search results")
    search_budget: int = Field(default=5_000_000, ge=1, description="Node budget of the necklace search")
    max_dimension: int = Field(default=127, ge=1, le=127, description="Largest accepted cube dimension")
    verify_outputs: bool = Field(default=True, description="Verify constructed objects before returning them")

    @field_validator("fixtures_dir")
    @classmethod
    def expand_fixtures_dir(cls, v: Path) -> Path:
        """Expand a leading ``~`` in the fixtures directory."""
        return v.expanduser()


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached application settings.

    Returns:
        Settings: Application configuration instance.
    """
    return Settings()


# Global settings instance
settings = get_settings()
