"""
Tests for necklace graphs, the disjoint-SCD search and lifting to the cube.
"""

import pytest

from app.core.exceptions import BudgetExceededError, ValidationError
from app.cube.necklace import (
    NecklaceSCD,
    NecklaceSearch,
    build_necklace_graph,
    instance_disjoint,
    lift_to_cube,
    necklace_rep,
    parse_necklace_scd,
    rotate,
    rotation_offset,
    search_disjoint_scds,
    verify_necklace_scd,
)
from app.cube.scd import pairwise_edge_disjoint, parse_scd_text, verify_scd
from tests.conftest import read_blocks


@pytest.fixture(scope="module")
def n5_found() -> list[NecklaceSCD]:
    found = search_disjoint_scds(build_necklace_graph(5), 3)
    assert found is not None
    return found


class TestNecklaces:
    """Test rotations and representatives."""

    def test_rotate(self):
        assert rotate(0b10000, 5, 1) == 0b00001
        assert rotate(0b00011, 5, 5) == 0b00011

    def test_representative_is_smallest_rotation(self):
        assert necklace_rep(0b10000, 5) == 0b00001
        assert necklace_rep(0b10100, 5) == 0b00101

    def test_rotation_offset(self):
        assert rotate(0b00101, 5, rotation_offset(0b10100, 0b00101, 5)) == 0b10100
        with pytest.raises(ValidationError):
            rotation_offset(0b00011, 0b00101, 5)


class TestNecklaceGraph:
    """Test the necklace multigraph."""

    def test_level_sizes(self):
        assert build_necklace_graph(5).level_sizes() == [1, 2, 2, 1]
        assert build_necklace_graph(7).level_sizes() == [1, 3, 5, 5, 3, 1]

    def test_multiplicity(self):
        assert build_necklace_graph(5).multiplicity(0b00001, 0b00011) == 2

    def test_every_zero_bit_gives_an_instance(self):
        g = build_necklace_graph(7)
        for rep in g.nodes:
            if rep.bit_count() < 6:
                assert len(g.up[rep]) == 7 - rep.bit_count()

    def test_small_n_is_rejected(self):
        with pytest.raises(ValidationError):
            build_necklace_graph(1)


class TestSearch:
    """Test the search for instance-disjoint SCDs."""

    def test_three_in_n5(self, n5_found):
        g = build_necklace_graph(5)
        assert len(n5_found) == 3
        assert all(verify_necklace_scd(g, scd) == [] for scd in n5_found)
        assert instance_disjoint(n5_found)

    def test_four_in_n5_is_impossible(self):
        assert search_disjoint_scds(build_necklace_graph(5), 4) is None

    def test_budget(self):
        search = NecklaceSearch(build_necklace_graph(5), 3, budget=1)
        with pytest.raises(BudgetExceededError) as exc_info:
            search.run()
        assert exc_info.value.nodes == 2

    def test_k_must_be_positive(self):
        with pytest.raises(ValidationError):
            NecklaceSearch(build_necklace_graph(5), 0)

    def test_search_is_deterministic(self, n5_found):
        again = search_disjoint_scds(build_necklace_graph(5), 3)
        assert [scd.to_text() for scd in again] == [scd.to_text() for scd in n5_found]

    def test_text_round_trip(self, n5_found):
        for scd in n5_found:
            parsed = parse_necklace_scd(scd.to_text())
            assert set(parsed.chains) == set(scd.chains)

    def test_parse_rejects_bad_position(self):
        with pytest.raises(ValidationError):
            parse_necklace_scd("00001@x 00011")

    @pytest.mark.slow
    def test_four_in_n7(self):
        g = build_necklace_graph(7)
        found = search_disjoint_scds(g, 4)
        assert found is not None
        assert instance_disjoint(found)
        lifted = lift_to_cube(found)
        assert all(verify_scd(d).passed for d in lifted)
        assert pairwise_edge_disjoint(lifted)


class TestLift:
    """Test lifting necklace SCDs to Q_n."""

    def test_lifts_are_disjoint_scds(self, n5_found):
        lifted = lift_to_cube(n5_found)
        assert len(lifted) == 3
        assert all(verify_scd(d).passed and len(d) == 10 for d in lifted)
        assert pairwise_edge_disjoint(lifted)

    def test_short_chains_are_closed_under_rotation(self, n5_found):
        for d in lift_to_cube(n5_found):
            chains = {chain.vertices for chain in d.chains}
            for vertices in chains:
                if vertices[0].bit_count() >= 2:
                    assert tuple(rotate(v, 5, 1) for v in vertices) in chains

    def test_non_prime_length_is_rejected(self):
        with pytest.raises(ValidationError):
            lift_to_cube([NecklaceSCD(4, ())])

    def test_empty_input(self):
        assert lift_to_cube([]) == []


class TestStoredFamilies:
    """Test the stored N_5 and N_7 decompositions and their lifts."""

    @pytest.mark.parametrize("n,k", [(5, 3), (7, 4)])
    def test_necklace_decompositions(self, n, k):
        g = build_necklace_graph(n)
        scds = [parse_necklace_scd(block) for block in read_blocks(f"necklace-n{n}-k{k}.txt")]
        assert len(scds) == k
        assert all(verify_necklace_scd(g, scd) == [] for scd in scds)
        assert instance_disjoint(scds)

    @pytest.mark.parametrize("n,k", [(5, 3), (7, 4)])
    def test_lifts_match_stored_cube_decompositions(self, n, k):
        scds = [parse_necklace_scd(block) for block in read_blocks(f"necklace-n{n}-k{k}.txt")]
        stored = [parse_scd_text(block) for block in read_blocks(f"scd-q{n}-necklace.txt")]
        assert lift_to_cube(scds) == stored

    @pytest.mark.parametrize("n,k", [(5, 3), (7, 4)])
    def test_stored_cube_decompositions_are_disjoint_scds(self, n, k):
        stored = [parse_scd_text(block) for block in read_blocks(f"scd-q{n}-necklace.txt")]
        assert len(stored) == k
        assert all(d.n == n and verify_scd(d).passed for d in stored)
        assert pairwise_edge_disjoint(stored)
