"""
Tests for the cycle factor service.
"""

import pytest

from app.core.exceptions import NotFoundError, ValidationError
from app.cube.factor import TableKind
from app.cube.product import product_pair
from app.services.factor import FactorService
from tests.conftest import read_table


@pytest.fixture
def service(test_settings) -> FactorService:
    return FactorService(test_settings)


class TestPair:
    """Test resolving SCD pairs."""

    def test_product_pair(self, service):
        assert service.pair(2, "product") == product_pair(2)

    def test_kind_pair(self, service):
        d, d_complement = service.pair(2, "d0, d0c")
        assert d.n == d_complement.n == 5
        assert d.edge_set().isdisjoint(d_complement.edge_set())

    @pytest.mark.parametrize("scds", ["d0c", "d0,d0c,d1"])
    def test_invalid_pairs(self, service, scds):
        with pytest.raises(ValidationError):
            service.pair(2, scds)

    def test_unknown_kind(self, service):
        with pytest.raises(NotFoundError):
            service.pair(2, "d0,d9")


class TestFactor:
    """Test factors and their census."""

    def test_census(self, service):
        record = service.census(2, 2)
        assert record.render() == "3 cycles: 4,4,22"
        assert record.histogram == {4: 2, 22: 1}

    def test_product_census_matches_table(self, service):
        expected = read_table("table_product.txt")[3]
        assert [service.census(3, ell, "product").cycles for ell in range(1, 5)] == expected

    def test_band_is_checked_first(self, service):
        with pytest.raises(ValidationError):
            service.factor(2, 4)


class TestTable:
    """Test table rows."""

    def test_rows(self, service):
        expected = read_table("table_d0.txt")
        assert service.table(TableKind.D0, 4) == {n: expected[n] for n in range(1, 5)}

    def test_size_must_be_positive(self, service):
        with pytest.raises(ValidationError):
            service.table(TableKind.PRODUCT, 0)
