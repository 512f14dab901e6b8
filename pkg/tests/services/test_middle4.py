"""
Tests for the middle-four-levels service.
"""

import pytest

from app.core.exceptions import ValidationError
from app.services.middle4 import ORACLE_LIMIT, Middle4Service


@pytest.fixture
def service(test_settings) -> Middle4Service:
    return Middle4Service(test_settings)


class TestMiddle4Service:
    """Test Hamilton cycles, structural checks and orbit counts."""

    def test_hamilton_lines(self, service):
        lines = service.hamilton_lines(2)
        assert len(lines) == 30
        assert len(set(lines)) == 30
        assert all(len(line) == 5 and line.count("1") in (1, 2, 3, 4) for line in lines)

    def test_hamilton_lines_closed(self, service):
        lines = service.hamilton_lines(2, repeat_first=True)
        assert len(lines) == 31
        assert lines[0] == lines[-1]

    def test_check_passes(self, service):
        reports = service.check(3)
        assert all(report.passed for report in reports)

    def test_orbits_with_oracle(self, service):
        census = service.orbits(4)
        assert census.orbits == 4
        assert census.trivalent_trees == 4

    def test_orbits_without_oracle(self, service):
        assert service.orbits(4, oracle=False).trivalent_trees is None

    def test_dimension_limit(self, service):
        with pytest.raises(ValidationError):
            service.hamilton(64)

    def test_oracle_runs_through_n10_by_default(self):
        assert ORACLE_LIMIT == 10

    def test_oracle_skipped_above_limit(self, service, monkeypatch):
        monkeypatch.setattr("app.services.middle4.ORACLE_LIMIT", 3)
        assert service.orbits(4).trivalent_trees is None
        assert service.orbits(4, oracle=True).trivalent_trees == 4
