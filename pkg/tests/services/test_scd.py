"""
Tests for SCD construction by kind name.
"""

import pytest

from app.core.exceptions import NotFoundError, ValidationError
from app.cube.product import product_pair
from app.cube.scd import complement_scd, scd_d0_paren, scd_d1
from app.services.scd import ScdService


@pytest.fixture
def service(test_settings) -> ScdService:
    return ScdService(test_settings)


class TestBuild:
    """Test the supported kinds."""

    def test_simple_kinds(self, service):
        assert service.build("d0", 4) == scd_d0_paren(4)
        assert service.build("d0c", 4) == complement_scd(scd_d0_paren(4))
        assert service.build("d1", 4) == scd_d1(4)
        assert service.build("d1c", 4) == complement_scd(scd_d1(4))

    def test_lexical_kind(self, service):
        assert service.build("lex:0,0,0", 3) == scd_d0_paren(3)

    def test_product_kind(self, service):
        d, d_prime = product_pair(2)
        assert service.build("product:0", 5) == d
        assert service.build("product:1", 5) == d_prime

    def test_family_kind(self, service):
        assert service.build("family:3", 6) == complement_scd(scd_d1(6))

    def test_necklace_kind_writes_a_fixture(self, service, test_settings):
        d = service.build("necklace:2", 5)
        assert service.verify(d).passed
        assert (test_settings.fixtures_dir / "necklace-n5-k3.txt").exists()

    @pytest.mark.parametrize("kind", ["d2", "lex", "spiral:1", "d0:1"])
    def test_unknown_kinds(self, service, kind):
        with pytest.raises(NotFoundError):
            service.build(kind, 4)

    @pytest.mark.parametrize(
        "kind,n",
        [
            ("d1", 5),
            ("product:0", 4),
            ("product:2", 5),
            ("product:x", 5),
            ("lex:0,0", 3),
            ("family:4", 4),
        ],
    )
    def test_kind_does_not_fit_dimension(self, service, kind, n):
        with pytest.raises(ValidationError):
            service.build(kind, n)

    def test_dimension_limit(self, service):
        with pytest.raises(ValidationError):
            service.build("d0", 0)


class TestDisjointness:
    """Test the disjointness report."""

    def test_four_disjoint_family(self, service):
        report = service.disjointness(6, ["d0", "d0c", "d1", "d1c"])
        assert report.passed
        assert report.kinds == ["d0", "d0c", "d1", "d1c"]

    def test_repeated_kind(self, service):
        report = service.disjointness(3, ["d0", "d0"])
        assert not report.passed
        assert report.matrix == [[True, False], [False, True]]

    def test_needs_two_kinds(self, service):
        with pytest.raises(ValidationError):
            service.disjointness(3, ["d0"])


class TestParse:
    """Test parsing SCD text."""

    def test_parse(self, service):
        text = scd_d1(4).to_text()
        assert service.parse(text) == scd_d1(4)
