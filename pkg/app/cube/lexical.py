"""
Lexical matchings between consecutive levels of the n-cube.

For a vertex ``x`` of weight ``k`` the lattice path is padded with down-steps
until it ends at height -1. Its down-steps are then ranked row by row, rows
ordered from top to bottom by starting height and each row read from right to
left. ``M^i`` flips the down-step of rank ``i`` if it belongs to ``x`` and
leaves ``x`` unmatched otherwise. The inverse direction pads with up-steps to
height +1 and ranks up-steps by ending height, each row read left to right.
"""

from dataclasses import dataclass, field
from math import comb

from app.core.exceptions import ValidationError
from app.cube.bitstrings import flip, level, to_text


@dataclass(frozen=True, slots=True)
class MatchingId:
    """Identifies the ``i``-lexical matching between levels ``k`` and ``k+1`` of Q_n."""

    n: int
    k: int
    i: int

    def __post_init__(self) -> None:
        if self.n < 1 or not 0 <= self.k <= self.n - 1:
            raise ValidationError(f"Level {self.k} has no upper neighbour level in Q_{self.n}")
        if not 0 <= self.i <= self.max_index:
            raise ValidationError(f"Lexical index {self.i} outside [0, {self.max_index}] for n={self.n}, k={self.k}")

    @property
    def max_index(self) -> int:
        return max(self.k, self.n - self.k - 1)


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint cube edges, stored as ``(lower, upper)`` pairs."""

    n: int
    edges: frozenset[tuple[int, int]]
    id: MatchingId | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.edges)

    def partners(self) -> dict[int, int]:
        """Symmetric partner map covering both endpoints of every edge."""
        result: dict[int, int] = {}
        for lower, upper in self.edges:
            result[lower] = upper
            result[upper] = lower
        return result


def down_step_ranking(x: int, n: int) -> list[int]:
    """
    Positions of the down-steps of the padded path, in rank order.

    Positions greater than ``n`` belong to appended steps.
    """
    height = 0
    steps: list[tuple[int, int]] = []
    for position, symbol in enumerate(to_text(x, n), start=1):
        if symbol == "0":
            steps.append((-height, -position))
            height -= 1
        else:
            height += 1
    position = n
    while height > -1:
        position += 1
        steps.append((-height, -position))
        height -= 1
    steps.sort()
    return [-neg_position for _, neg_position in steps]


def up_step_ranking(y: int, n: int) -> list[int]:
    """Positions of the up-steps of the path padded to height +1, in rank order."""
    height = 0
    steps: list[tuple[int, int]] = []
    for position, symbol in enumerate(to_text(y, n), start=1):
        if symbol == "1":
            height += 1
            steps.append((-height, position))
        else:
            height -= 1
    position = n
    while height < 1:
        position += 1
        height += 1
        steps.append((-height, position))
    steps.sort()
    return [position for _, position in steps]


def up_partner(n: int, i: int, x: int) -> int | None:
    position = down_step_ranking(x, n)[i]
    return flip(x, n, position) if position <= n else None


def down_partner(n: int, i: int, y: int) -> int | None:
    position = up_step_ranking(y, n)[i]
    return flip(y, n, position) if position <= n else None


def lex_up(mid: MatchingId, x: int) -> int | None:
    """
    Upper partner of ``x`` in ``M^i_{n,k}``, or ``None`` if unmatched.

    Raises:
        ValidationError: If ``x`` is not on level ``k``.
    """
    if x.bit_count() != mid.k or x >> mid.n:
        raise ValidationError(f"{to_text(x, mid.n)} is not on level {mid.k} of Q_{mid.n}")
    return up_partner(mid.n, mid.i, x)


def lex_down(mid: MatchingId, y: int) -> int | None:
    """
    Lower partner of ``y`` in ``M^i_{n,k}``, or ``None`` if unmatched.

    Raises:
        ValidationError: If ``y`` is not on level ``k+1``.
    """
    if y.bit_count() != mid.k + 1 or y >> mid.n:
        raise ValidationError(f"{to_text(y, mid.n)} is not on level {mid.k + 1} of Q_{mid.n}")
    return down_partner(mid.n, mid.i, y)


def lex_matching(mid: MatchingId) -> Matching:
    """All edges of ``M^i_{n,k}``, generated from the smaller of the two levels."""
    n, k, i = mid.n, mid.k, mid.i
    edges: set[tuple[int, int]] = set()
    if comb(n, k) <= comb(n, k + 1):
        for x in level(n, k):
            y = up_partner(n, i, x)
            if y is not None:
                edges.add((x, y))
    else:
        for y in level(n, k + 1):
            x = down_partner(n, i, y)
            if x is not None:
                edges.add((x, y))
    return Matching(n=n, edges=frozenset(edges), id=mid)
