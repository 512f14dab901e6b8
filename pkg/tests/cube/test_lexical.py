"""
Tests for lexical matchings.
"""

import pytest

from app.core.exceptions import ValidationError
from app.cube.bitstrings import comp_rev_bits, complement_bits, level, reverse_bits, to_bits, to_text
from app.cube.lexical import MatchingId, down_partner, lex_down, lex_matching, lex_up, up_partner

X22 = "1110001001001001100001"
Y22 = "1110001001001001100101"


def all_ids(n: int):
    for k in range(n):
        for i in range(max(k, n - k - 1) + 1):
            yield MatchingId(n, k, i)


class TestMatchingId:
    """Test matching identifiers."""

    def test_max_index(self):
        assert MatchingId(22, 9, 0).max_index == 12
        assert MatchingId(3, 2, 0).max_index == 2

    @pytest.mark.parametrize("n,k,i", [(3, 3, 0), (3, -1, 0), (3, 1, 2), (0, 0, 0)])
    def test_out_of_range(self, n, k, i):
        with pytest.raises(ValidationError):
            MatchingId(n, k, i)


class TestLexicalMatchings:
    """Test partners, saturation and the symmetry identities."""

    def test_eleventh_matching_in_q22(self):
        mid = MatchingId(22, 9, 11)
        assert to_text(lex_up(mid, to_bits(X22)), 22) == Y22
        assert to_text(lex_down(mid, to_bits(Y22)), 22) == X22

    def test_incidences_of_the_two_q22_vertices(self):
        x, y = to_bits(X22), to_bits(Y22)
        assert [i for i in range(13) if up_partner(22, i, x) is not None] == list(range(13))
        assert [i for i in range(13) if down_partner(22, i, y) is None] == [4, 6, 9]

    def test_q3_top_level(self):
        assert lex_up(MatchingId(3, 2, 0), 0b110) == 0b111
        assert lex_up(MatchingId(3, 2, 2), 0b011) == 0b111
        assert lex_up(MatchingId(3, 2, 2), 0b110) is None

    def test_wrong_level_is_rejected(self):
        with pytest.raises(ValidationError):
            lex_up(MatchingId(3, 1, 0), 0b110)
        with pytest.raises(ValidationError):
            lex_down(MatchingId(3, 1, 0), 0b100)

    def test_middle_levels_of_q3_are_perfectly_matched(self):
        for i in range(2):
            matching = lex_matching(MatchingId(3, 1, i))
            assert len(matching) == 3
            assert len(matching.partners()) == 6

    @pytest.mark.parametrize("n", range(1, 10))
    def test_saturation_and_edge_partition(self, n):
        for k in range(n):
            ids = [mid for mid in all_ids(n) if mid.k == k]
            smaller = min(len(level(n, k)), len(level(n, k + 1)))
            union: set[tuple[int, int]] = set()
            for mid in ids:
                matching = lex_matching(mid)
                assert len(matching) == smaller
                assert union.isdisjoint(matching.edges)
                union |= matching.edges
            assert len(union) == len(level(n, k)) * (n - k)

    @pytest.mark.parametrize("n", [*range(1, 9), pytest.param(9, marks=pytest.mark.slow)])
    def test_partial_maps_are_inverse(self, n):
        for mid in all_ids(n):
            for x, y in lex_matching(mid).edges:
                assert lex_up(mid, x) == y
                assert lex_down(mid, y) == x

    @pytest.mark.parametrize("n", [*range(1, 9), pytest.param(9, marks=pytest.mark.slow)])
    def test_complement_and_reversal_identities(self, n):
        for mid in all_ids(n):
            k, i, top = mid.k, mid.i, mid.max_index
            edges = lex_matching(mid).edges
            complemented = {(complement_bits(y, n), complement_bits(x, n)) for x, y in edges}
            reversed_ = {(reverse_bits(x, n), reverse_bits(y, n)) for x, y in edges}
            both = {(comp_rev_bits(y, n), comp_rev_bits(x, n)) for x, y in edges}
            assert complemented == lex_matching(MatchingId(n, n - k - 1, top - i)).edges
            assert reversed_ == lex_matching(MatchingId(n, k, top - i)).edges
            assert both == lex_matching(MatchingId(n, n - k - 1, i)).edges
