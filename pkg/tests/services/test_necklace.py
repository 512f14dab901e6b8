"""
Tests for the necklace search service and its fixtures.
"""

import pytest

from app.config import Settings
from app.core.exceptions import BudgetExceededError, NotFoundError, ValidationError
from app.cube.scd import pairwise_edge_disjoint, parse_scd_text
from app.services.necklace import NecklaceService
from tests.conftest import FIXTURES, read_blocks


@pytest.fixture
def service(test_settings) -> NecklaceService:
    return NecklaceService(test_settings)


class TestSearch:
    """Test searching and persisting necklace SCDs."""

    def test_found_search_writes_fixture(self, service, test_settings):
        report, found = service.search(5, 3)

        assert report.status == "found"
        assert len(found) == 3
        path = test_settings.fixtures_dir / "necklace-n5-k3.txt"
        assert report.fixtures == [str(path)]
        assert path.exists()

    def test_impossible_search(self, service, test_settings):
        report, found = service.search(5, 4)

        assert report.status == "impossible"
        assert found == []
        assert not (test_settings.fixtures_dir / "necklace-n5-k4.txt").exists()

    def test_budget_exceeded(self, service):
        with pytest.raises(BudgetExceededError) as exc_info:
            service.search(5, 3, budget=1)
        assert exc_info.value.nodes == 2

    def test_k_must_be_positive(self, service):
        with pytest.raises(ValidationError):
            service.search(5, 0)


class TestFixtures:
    """Test loading stored fixtures."""

    def test_load_round_trips_search(self, service):
        _, found = service.search(5, 3)
        assert [scd.to_text() for scd in service.load(5, 3)] == [scd.to_text() for scd in found]

    def test_missing_fixture(self, service):
        with pytest.raises(NotFoundError):
            service.load(5, 3)

    def test_fixture_with_wrong_count(self, service):
        service.search(5, 3)
        service.fixture_path(5, 2).write_text(service.fixture_path(5, 3).read_text(encoding="utf-8"))
        with pytest.raises(ValidationError):
            service.load(5, 2)

    def test_family_searches_once(self, service, test_settings):
        first = [scd.to_text() for scd in service.family(5)]
        assert (test_settings.fixtures_dir / "necklace-n5-k3.txt").exists()
        assert [scd.to_text() for scd in service.family(5)] == first

    def test_family_unknown_length(self, service):
        with pytest.raises(NotFoundError):
            service.family(6)


class TestLifted:
    """Test lifting to the cube."""

    def test_lifted_q5_family(self, service):
        lifted = service.lifted(5)
        assert len(lifted) == 3
        assert all(d.n == 5 for d in lifted)
        assert pairwise_edge_disjoint(lifted)


class TestStoredFixtures:
    """Test the service against the decompositions stored with the tests."""

    @pytest.fixture
    def stored_service(self) -> NecklaceService:
        return NecklaceService(Settings(fixtures_dir=FIXTURES, search_budget=1))

    @pytest.mark.parametrize("n,k", [(5, 3), (7, 4)])
    def test_family_loads_without_searching(self, stored_service, n, k):
        assert len(stored_service.family(n)) == k

    @pytest.mark.parametrize("n", [5, 7])
    def test_lifted_matches_stored_cube_decompositions(self, stored_service, n):
        stored = [parse_scd_text(block) for block in read_blocks(f"scd-q{n}-necklace.txt")]
        assert stored_service.lifted(n) == stored
