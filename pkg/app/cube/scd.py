"""
Symmetric chain decompositions of the n-cube.

Chains are stored bottom-up as tuples of integer-encoded vertices. The
decomposition ``D0`` is built three ways (parenthesis matching, the marker
procedure, 0-lexical matchings) and ``D1`` two ways (marker procedure,
1-lexical matchings); the tests cross-check them against each other.
"""

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from app.core.exceptions import ValidationError
from app.core.logging import get_logger
from app.cube.bitstrings import complement_bits, flip, heights, level, to_bits, to_text
from app.cube.lexical import MatchingId, up_partner
from app.models.responses import CheckResult, VerificationReport

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class Chain:
    """Weight-increasing path in Q_n, lowest vertex first."""

    n: int
    vertices: tuple[int, ...]

    @property
    def bottom(self) -> int:
        return self.vertices[0]

    @property
    def top(self) -> int:
        return self.vertices[-1]

    @property
    def is_symmetric(self) -> bool:
        return self.bottom.bit_count() + self.top.bit_count() == self.n

    def edges(self) -> Iterator[tuple[int, int]]:
        return zip(self.vertices, self.vertices[1:])

    def __len__(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        return " ".join(to_text(v, self.n) for v in self.vertices)


@dataclass(frozen=True)
class ChainDecomposition:
    """A set of chains meant to partition the vertices of Q_n."""

    n: int
    chains: frozenset[Chain]

    @classmethod
    def from_paths(cls, n: int, paths: Iterable[Sequence[int]]) -> "ChainDecomposition":
        return cls(n, frozenset(Chain(n, tuple(path)) for path in paths))

    def sorted_chains(self) -> list[Chain]:
        return sorted(self.chains, key=lambda chain: chain.vertices)

    def edge_set(self) -> set[tuple[int, int]]:
        return {edge for chain in self.chains for edge in chain.edges()}

    def __len__(self) -> int:
        return len(self.chains)

    def to_text(self) -> str:
        """SCD text format: one chain per line, chains sorted by first vertex."""
        return "\n".join(str(chain) for chain in self.sorted_chains())


def parse_scd_text(text: str) -> ChainDecomposition:
    """
    Parse the SCD text format.

    Raises:
        ValidationError: On empty input, mixed lengths or non-binary symbols.
    """
    paths: list[list[int]] = []
    n: int | None = None
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        lengths = {len(token) for token in tokens}
        if len(lengths) != 1 or (n is not None and lengths != {n}):
            raise ValidationError(f"Line {number}: vertices of different lengths")
        n = lengths.pop()
        try:
            paths.append([to_bits(token) for token in tokens])
        except ValidationError as exc:
            raise ValidationError(f"Line {number}: {exc.message}") from exc
    if n is None:
        raise ValidationError("No chains in input")
    return ChainDecomposition.from_paths(n, paths)


def _all_vertices(n: int) -> range:
    return range(1 << n)


def paren_unmatched(x: int, n: int) -> tuple[list[int], list[int]]:
    """
    Unmatched positions under bracket matching with 0 = '(' and 1 = ')'.

    Returns:
        tuple: ``(ones, zeros)``, the unmatched 1-positions and 0-positions, left to right.
    """
    open_zeros: list[int] = []
    ones: list[int] = []
    for position, symbol in enumerate(to_text(x, n), start=1):
        if symbol == "0":
            open_zeros.append(position)
        elif open_zeros:
            open_zeros.pop()
        else:
            ones.append(position)
    return ones, open_zeros


def paren_neighbors(x: int, n: int) -> tuple[int | None, int | None]:
    """Chain neighbours of ``x`` in D0: flip the rightmost unmatched 1, or the leftmost unmatched 0."""
    ones, zeros = paren_unmatched(x, n)
    down = flip(x, n, ones[-1]) if ones else None
    up = flip(x, n, zeros[0]) if zeros else None
    return down, up


@lru_cache(maxsize=32)
def scd_d0_paren(n: int) -> ChainDecomposition:
    """D0 by bracket matching: each chain grows from a vertex without unmatched 1s."""
    if n < 1:
        raise ValidationError(f"Dimension must be positive, got {n}")
    paths = []
    for x in _all_vertices(n):
        ones, zeros = paren_unmatched(x, n)
        if ones:
            continue
        path = [x]
        for position in zeros:
            path.append(flip(path[-1], n, position))
        paths.append(path)
    logger.debug("D0 of Q_%d by brackets: %d chains", n, len(paths))
    return ChainDecomposition.from_paths(n, paths)


def _chain_from_flips(x: int, n: int, down: list[int], up: list[int]) -> list[int]:
    below = [x]
    for position in down:
        below.append(flip(below[-1], n, position))
    above = [x]
    for position in up:
        above.append(flip(above[-1], n, position))
    return below[::-1] + above[1:]


def _down_steps_from(word: str, levels: list[int], height: int) -> list[int]:
    """Positions of the down-steps starting at ``height``."""
    return [p for p in range(1, len(word) + 1) if word[p - 1] == "0" and levels[p - 1] == height]


def _up_steps_to(word: str, levels: list[int], height: int) -> list[int]:
    """Positions of the up-steps ending at ``height``."""
    return [p for p in range(1, len(word) + 1) if word[p - 1] == "1" and levels[p] == height]


def d0_up_positions(word: str) -> list[int]:
    """Upward flip sequence of the marker procedure for D0."""
    levels = heights(word)
    height = max(levels)
    marker = max(i for i, h in enumerate(levels) if h == height)
    positions = []
    while height >= 1:
        positions.append(marker + 1)
        height -= 1
        if height == 0:
            break
        marker = _down_steps_from(word, levels, height)[-1] - 1
    return positions


def d0_down_positions(word: str) -> list[int]:
    """Mirror of ``d0_up_positions``: leftmost highest point, up-steps ending at the marker."""
    levels = heights(word)
    height = max(levels)
    marker = min(i for i, h in enumerate(levels) if h == height)
    positions = []
    while height >= 1:
        positions.append(marker)
        height -= 1
        if height == 0:
            break
        marker = _up_steps_to(word, levels, height)[0]
    return positions


def d1_up_positions(word: str) -> list[int]:
    """
    Upward flip sequence of the marker procedure for D1.

    The path is padded with one down-step leaving height 0 at position n+1,
    which takes part in the "second from the right" choice on the last round.
    """
    n = len(word)
    levels = heights(word)
    height = max(levels)
    marker = max(i for i, h in enumerate(levels) if h == height)
    positions = []
    left = [p for p in _down_steps_from(word, levels, height) if p <= marker]
    if left:
        positions.append(left[-1])
    while height >= 2:
        labeled = _down_steps_from(word, levels, height - 1)[-1]
        positions.append(labeled)
        lower = [p for p in _down_steps_from(word, levels, height - 2) if p > labeled]
        if height == 2:
            lower.append(n + 1)
        candidates = sorted([marker + 1, *lower])
        positions.append(candidates[-2])
        marker = lower[-1] - 1
        height -= 2
    return positions


def d1_down_positions(word: str) -> list[int]:
    """
    Downward flip sequence for D1, the left/right mirror of ``d1_up_positions``.

    Left and right swap, up-steps and down-steps swap, and starting points
    become ending points; the padding step sits at position 0.
    """
    levels = heights(word)
    height = max(levels)
    marker = min(i for i, h in enumerate(levels) if h == height)
    positions = []
    right = [p for p in _up_steps_to(word, levels, height) if p > marker]
    if right:
        positions.append(right[0])
    while height >= 2:
        labeled = _up_steps_to(word, levels, height - 1)[0]
        positions.append(labeled)
        lower = [p for p in _up_steps_to(word, levels, height - 2) if p < labeled]
        if height == 2:
            lower.insert(0, 0)
        candidates = sorted([marker, *lower])
        positions.append(candidates[1])
        marker = lower[0]
        height -= 2
    return positions


def _require_even(n: int) -> None:
    if n < 2 or n % 2:
        raise ValidationError(f"Marker constructions need an even dimension >= 2, got {n}")


@lru_cache(maxsize=32)
def scd_d0_marker(n: int) -> ChainDecomposition:
    """D0 as the union of the marker chains through the middle level."""
    _require_even(n)
    paths = []
    for x in level(n, n // 2):
        word = to_text(x, n)
        paths.append(_chain_from_flips(x, n, d0_down_positions(word), d0_up_positions(word)))
    return ChainDecomposition.from_paths(n, paths)


@lru_cache(maxsize=32)
def scd_d1(n: int) -> ChainDecomposition:
    """D1 as the union of the marker chains through the middle level."""
    _require_even(n)
    paths = []
    for x in level(n, n // 2):
        word = to_text(x, n)
        paths.append(_chain_from_flips(x, n, d1_down_positions(word), d1_up_positions(word)))
    return ChainDecomposition.from_paths(n, paths)


def scd_from_lexical(n: int, i_seq: Sequence[int]) -> ChainDecomposition:
    """
    Union of the matchings ``M^{i_k}_{n,k}`` for ``k = 0..n-1``.

    The result always partitions Q_n into chains; whether they are symmetric
    depends on the index sequence.

    Raises:
        ValidationError: If the sequence has the wrong length or an index is out of range.
    """
    if len(i_seq) != n:
        raise ValidationError(f"Expected {n} lexical indices, got {len(i_seq)}")
    ids = [MatchingId(n, k, i) for k, i in enumerate(i_seq)]
    up: dict[int, int] = {}
    for mid in ids:
        for x in level(n, mid.k):
            y = up_partner(n, mid.i, x)
            if y is not None:
                up[x] = y
    reached = set(up.values())
    paths = []
    for x in _all_vertices(n):
        if x in reached:
            continue
        path = [x]
        while path[-1] in up:
            path.append(up[path[-1]])
        paths.append(path)
    return ChainDecomposition.from_paths(n, paths)


def complement_scd(d: ChainDecomposition) -> ChainDecomposition:
    """Complement every vertex; chains are re-oriented bottom-up."""
    flipped = ([complement_bits(v, d.n) for v in reversed(chain.vertices)] for chain in d.chains)
    return ChainDecomposition.from_paths(d.n, flipped)


def verify_scd(d: ChainDecomposition, subject: str = "scd") -> VerificationReport:
    """
    Check that ``d`` is a symmetric chain decomposition of Q_n.

    Failures are reported with a witness rather than raised.
    """
    n = d.n
    seen: dict[int, int] = {}
    for chain in d.chains:
        for v in chain.vertices:
            seen[v] = seen.get(v, 0) + 1

    partition_witness = None
    duplicated = sorted(v for v, count in seen.items() if count > 1 or v >> n or v < 0)
    if duplicated:
        partition_witness = f"{to_text(duplicated[0], n)} covered more than once"
    elif len(seen) != 1 << n:
        missing = next(v for v in _all_vertices(n) if v not in seen)
        partition_witness = f"{to_text(missing, n)} not covered"

    path_witness = None
    for chain in d.sorted_chains():
        for a, b in chain.edges():
            if (a ^ b).bit_count() != 1 or b < a:
                path_witness = f"{to_text(a, n)} -> {to_text(b, n)} in chain {chain}"
                break
        if path_witness:
            break

    asymmetric = [chain for chain in d.sorted_chains() if not chain.is_symmetric]
    expected = comb(n, n // 2)
    checks = [
        CheckResult(name="partition", passed=partition_witness is None, witness=partition_witness),
        CheckResult(name="paths", passed=path_witness is None, witness=path_witness),
        CheckResult(
            name="symmetry",
            passed=not asymmetric,
            witness=f"chain {asymmetric[0]}" if asymmetric else None,
        ),
        CheckResult(
            name="count",
            passed=len(d) == expected,
            witness=None if len(d) == expected else f"{len(d)} chains, expected {expected}",
        ),
    ]
    return VerificationReport(subject=subject, passed=all(c.passed for c in checks), checks=checks)


def edge_disjoint(d1: ChainDecomposition, d2: ChainDecomposition) -> bool:
    """
    True if no cube edge is a chain edge of both decompositions.

    Raises:
        ValidationError: If the dimensions differ.
    """
    if d1.n != d2.n:
        raise ValidationError(f"Dimension mismatch: {d1.n} vs {d2.n}")
    return d1.edge_set().isdisjoint(d2.edge_set())


def disjointness_matrix(ds: Sequence[ChainDecomposition]) -> list[list[bool]]:
    """Entry ``[a][b]`` tells whether ``ds[a]`` and ``ds[b]`` are edge-disjoint; the diagonal is True."""
    if len({d.n for d in ds}) > 1:
        raise ValidationError("Decompositions of different dimensions")
    edge_sets = [d.edge_set() for d in ds]
    return [[a == b or edge_sets[a].isdisjoint(edge_sets[b]) for b in range(len(ds))] for a in range(len(ds))]


def pairwise_edge_disjoint(ds: Sequence[ChainDecomposition]) -> bool:
    return all(all(row) for row in disjointness_matrix(ds))
