"""
Pytest configuration and fixtures.

This module provides common test fixtures and configuration
for the test suite.
"""

from pathlib import Path

import pytest
from typer.testing import CliRunner

from app.config import Settings
from app.cube.factor import parse_table
from app.dependencies import ServiceContainer

FIXTURES = Path(__file__).parent / "fixtures"

CLI_MODULES = ("app.cli.scd", "app.cli.factor", "app.cli.middle4", "app.cli.necklace")


def read_table(name: str) -> dict[int, list[int]]:
    """Rows of a transcribed table under ``tests/fixtures``."""
    return parse_table((FIXTURES / name).read_text(encoding="utf-8"))


def read_blocks(name: str) -> list[str]:
    """Blank-line separated blocks of a file under ``tests/fixtures``."""
    text = (FIXTURES / name).read_text(encoding="utf-8")
    return [block for block in text.split("\n\n") if block.strip()]


@pytest.fixture
def test_settings(tmp_path: Path) -> Settings:
    """
    Settings writing fixtures into a temporary directory.

    Returns:
        Settings: Isolated settings instance.
    """
    return Settings(fixtures_dir=tmp_path / "fixtures", log_level="WARNING")


@pytest.fixture
def container(test_settings: Settings, monkeypatch: pytest.MonkeyPatch) -> ServiceContainer:
    """Service container used by every CLI command during the test."""
    services = ServiceContainer(test_settings)
    for module in CLI_MODULES:
        monkeypatch.setattr(f"{module}.get_service_container", lambda: services)
    return services


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
