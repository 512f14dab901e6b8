"""
Tests for symmetric chain decompositions D0 and D1.
"""

from itertools import product

import pytest

from app.core.exceptions import ValidationError
from app.cube.bitstrings import flip, level, to_bits, to_text
from app.cube.scd import (
    ChainDecomposition,
    complement_scd,
    d0_down_positions,
    d0_up_positions,
    d1_down_positions,
    d1_up_positions,
    disjointness_matrix,
    edge_disjoint,
    paren_neighbors,
    parse_scd_text,
    pairwise_edge_disjoint,
    scd_d0_marker,
    scd_d0_paren,
    scd_d1,
    scd_from_lexical,
    verify_scd,
)

X22 = "1110001001001001100001"
MARKER22 = "1111101001001001100001"


def failed_checks(d: ChainDecomposition) -> list[str]:
    return [check.name for check in verify_scd(d).checks if not check.passed]


def paren_walk(word: str, upward: bool) -> list[int]:
    """Flip positions met when following bracket neighbours from ``word`` to the chain's end."""
    n = len(word)
    x = to_bits(word)
    positions = []
    while True:
        down, up = paren_neighbors(x, n)
        nxt = up if upward else down
        if nxt is None:
            return positions
        positions.append(n - (x ^ nxt).bit_length() + 1)
        x = nxt


class TestD0:
    """Test the three constructions of D0."""

    def test_bracket_neighbours_in_q22(self):
        x = to_bits(X22)
        down, up = paren_neighbors(x, 22)
        assert up == flip(x, 22, 4)
        assert down == flip(x, 22, 3)

    def test_single_chain_in_q1(self):
        assert scd_d0_paren(1).to_text() == "0 1"

    @pytest.mark.parametrize("n", range(1, 13))
    def test_is_an_scd(self, n):
        assert verify_scd(scd_d0_paren(n)).passed

    def test_q5_has_ten_chains(self):
        assert len(scd_d0_paren(5)) == 10

    def test_marker_procedure_follows_brackets_in_q22(self):
        assert d0_up_positions(MARKER22) == paren_walk(MARKER22, upward=True)
        assert d0_down_positions(MARKER22) == paren_walk(MARKER22, upward=False)

    def test_marker_chain_has_eleven_vertices(self):
        assert len(d0_up_positions(MARKER22)) + len(d0_down_positions(MARKER22)) + 1 == 11

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_three_constructions_agree(self, n):
        paren = scd_d0_paren(n)
        assert scd_d0_marker(n) == paren
        assert scd_from_lexical(n, [0] * n) == paren

    def test_lexical_zero_sequence_in_odd_dimension(self):
        assert scd_from_lexical(7, [0] * 7) == scd_d0_paren(7)

    def test_marker_needs_even_dimension(self):
        with pytest.raises(ValidationError):
            scd_d0_marker(5)


class TestD1:
    """Test the marker and lexical constructions of D1."""

    def test_first_flips_in_q22(self):
        assert d1_up_positions(MARKER22)[0] == 6
        assert d1_down_positions(MARKER22)[0] == 7

    def test_q2(self):
        assert scd_d1(2) == ChainDecomposition.from_paths(2, [[0b00, 0b01, 0b11], [0b10]])

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_equals_union_of_one_lexical_matchings(self, n):
        assert scd_d1(n) == scd_from_lexical(n, [1] * n)

    def test_q6_chain_lengths(self):
        d = scd_d1(6)
        assert verify_scd(d).passed
        assert len(d) == 20
        assert sorted(len(chain) for chain in d.chains) == sorted(
            len(chain) for chain in scd_d0_paren(6).chains
        )

    def test_one_lexical_in_odd_dimension_is_not_symmetric(self):
        assert failed_checks(scd_from_lexical(7, [1] * 7)) == ["symmetry"]


class TestLexicalUnions:
    """Test decompositions given as unions of lexical matchings."""

    def test_wrong_sequence_length(self):
        with pytest.raises(ValidationError):
            scd_from_lexical(4, [0, 0, 0])

    def test_index_out_of_range(self):
        with pytest.raises(ValidationError):
            scd_from_lexical(3, [0, 2, 0])

    @pytest.mark.parametrize("n", range(1, 5))
    def test_disjoint_iff_sequences_differ_everywhere(self, n):
        ranges = [range(max(k, n - k - 1) + 1) for k in range(n)]
        sequences = list(product(*ranges))
        edges = {seq: scd_from_lexical(n, seq).edge_set() for seq in sequences}
        for a in sequences:
            for b in sequences:
                differ = all(i != j for i, j in zip(a, b))
                assert edges[a].isdisjoint(edges[b]) == differ


class TestComplementAndDisjointness:
    """Test complements and edge-disjointness."""

    def test_complement_of_a_chain(self):
        d = ChainDecomposition.from_paths(2, [[0b00, 0b01, 0b11], [0b10]])
        assert complement_scd(d).to_text() == "00 10 11\n01"

    def test_complement_is_an_involution(self):
        d = scd_d1(6)
        assert complement_scd(complement_scd(d)) == d

    @pytest.mark.parametrize("n", range(2, 13))
    def test_d0_and_its_complement_are_disjoint(self, n):
        d0 = scd_d0_paren(n)
        assert edge_disjoint(d0, complement_scd(d0))

    @pytest.mark.parametrize("n", range(2, 6))
    def test_d0_meets_itself(self, n):
        assert not edge_disjoint(scd_d0_paren(n), scd_d0_paren(n))

    @pytest.mark.parametrize("n", [6, 8, 10, 12, 14])
    def test_four_disjoint_scds_in_even_dimension(self, n):
        d0, d1 = scd_d0_paren(n), scd_d1(n)
        family = [d0, complement_scd(d0), d1, complement_scd(d1)]
        assert all(verify_scd(d).passed for d in family)
        assert pairwise_edge_disjoint(family)

    def test_three_disjoint_scds_in_q4(self):
        d0 = scd_d0_paren(4)
        assert pairwise_edge_disjoint([d0, complement_scd(d0), scd_d1(4)])

    def test_four_scds_use_every_middle_edge_of_q6(self):
        d0, d1 = scd_d0_paren(6), scd_d1(6)
        family = [d0, complement_scd(d0), d1, complement_scd(d1)]
        middle = set(level(6, 3))
        used = [edge for d in family for edge in d.edge_set() if middle & set(edge)]
        assert len(used) == len(set(used)) == 20 * 6

    def test_matrix_diagonal_and_mismatch(self):
        d0 = scd_d0_paren(3)
        assert disjointness_matrix([d0, d0]) == [[True, False], [False, True]]
        with pytest.raises(ValidationError):
            edge_disjoint(d0, scd_d0_paren(4))


class TestVerifyAndText:
    """Test verification reports and the SCD text format."""

    def test_truncated_chain_fails_symmetry(self):
        d = ChainDecomposition.from_paths(2, [[0b00, 0b10], [0b11], [0b01]])
        report = verify_scd(d)
        symmetry = next(check for check in report.checks if check.name == "symmetry")
        assert not report.passed
        assert not symmetry.passed
        assert symmetry.witness

    def test_missing_vertex_is_reported(self):
        d = ChainDecomposition.from_paths(2, [[0b00, 0b10, 0b11]])
        assert "partition" in failed_checks(d)

    def test_text_round_trip(self):
        d = scd_d1(4)
        assert parse_scd_text(d.to_text()) == d

    def test_text_lists_chains_by_first_vertex(self):
        lines = scd_d0_paren(3).to_text().splitlines()
        assert lines == sorted(lines)
        assert all(len(token) == 3 for line in lines for token in line.split())
        assert to_text(0, 3) in lines[0]

    @pytest.mark.parametrize("text", ["", "00 01\n1 11", "0a 01"])
    def test_parse_rejects_bad_input(self, text):
        with pytest.raises(ValidationError):
            parse_scd_text(text)
