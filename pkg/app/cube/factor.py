"""
Cycle factors in the middle levels of odd-dimensional cubes.

Two edge-disjoint SCDs of Q_{2n+1} are clipped to the middle ``2*ell``
levels. Every clipped path has an odd number of edges, so taking every
second edge along it gives a perfect matching of the band; the union of the
two matchings is a cycle factor.
"""

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import StrEnum

from app.core.exceptions import ValidationError, VerificationError
from app.core.logging import get_logger
from app.cube.bitstrings import to_text
from app.cube.lexical import Matching
from app.cube.product import product_pair, scd_d0_product
from app.cube.scd import ChainDecomposition, complement_scd, edge_disjoint
from app.models.responses import CensusRecord, CheckResult, VerificationReport
from app.utils.helpers import band_size

logger = get_logger(__name__)


@dataclass(frozen=True)
class CycleFactor:
    """Vertex-disjoint cycles covering the levels ``lo..hi`` of Q_dimension."""

    dimension: int
    lo: int
    hi: int
    cycles: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.dimension // 2

    @property
    def ell(self) -> int:
        return (self.hi - self.lo + 1) // 2

    def edges(self) -> set[tuple[int, int]]:
        """Cycle edges as ``(smaller, larger)`` pairs."""
        result = set()
        for cycle in self.cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                result.add((min(a, b), max(a, b)))
        return result

    def to_text(self) -> str:
        """One cycle per line, vertices separated by spaces."""
        return "\n".join(" ".join(to_text(v, self.dimension) for v in cycle) for cycle in self.cycles)


def band_limits(dimension: int, ell: int) -> tuple[int, int]:
    """
    Lowest and highest level of the middle ``2*ell`` levels of Q_dimension.

    Raises:
        ValidationError: For an even dimension or ``ell`` outside ``[1, n+1]``.
    """
    if dimension < 1 or dimension % 2 == 0:
        raise ValidationError(f"Cycle factors need an odd dimension, got {dimension}")
    n = dimension // 2
    if not 1 <= ell <= n + 1:
        raise ValidationError(f"ell must lie in [1, {n + 1}], got {ell}")
    return n + 1 - ell, n + ell


def restrict_chains(d: ChainDecomposition, lo: int, hi: int) -> list[tuple[int, ...]]:
    """
    Clip every chain to the levels ``lo..hi`` and drop chains that miss the band.

    Raises:
        ValidationError: If the band is not symmetric around the middle of an odd cube.
    """
    if d.n % 2 == 0 or lo + hi != d.n or not 0 <= lo <= hi <= d.n:
        raise ValidationError(f"[{lo}, {hi}] is not a middle band of Q_{d.n}")
    paths = []
    for chain in d.sorted_chains():
        clipped = tuple(v for v in chain.vertices if lo <= v.bit_count() <= hi)
        if clipped:
            paths.append(clipped)
    return paths


def alternating_matching(paths: Iterable[Sequence[int]], n: int) -> Matching:
    """
    First, third, fifth, ... edge of every path.

    Raises:
        ValidationError: If a path has an even number of edges.
    """
    edges = set()
    for path in paths:
        if len(path) % 2:
            raise ValidationError(f"Path of even length starting at {to_text(path[0], n)}")
        for index in range(0, len(path), 2):
            edges.add((path[index], path[index + 1]))
    return Matching(n=n, edges=frozenset(edges))


def adjacency_from_edges(edge_sets: Iterable[Iterable[tuple[int, int]]]) -> dict[int, list[int]]:
    adjacency: dict[int, list[int]] = {}
    for edges in edge_sets:
        for a, b in edges:
            adjacency.setdefault(a, []).append(b)
            adjacency.setdefault(b, []).append(a)
    return adjacency


def extract_cycles(adjacency: Mapping[int, Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """
    Split a 2-regular graph into cycles.

    Each cycle starts at its smallest vertex and leaves it towards the smaller
    neighbour. Cycles are sorted by length, then by first vertex.

    Raises:
        VerificationError: If some vertex does not have degree two.
    """
    bad = next((v for v, neighbours in adjacency.items() if len(neighbours) != 2), None)
    if bad is not None:
        raise VerificationError(f"{to_text(bad, n)} has degree {len(adjacency[bad])}, expected 2")
    visited: set[int] = set()
    cycles = []
    for start in sorted(adjacency):
        if start in visited:
            continue
        cycle = [start]
        visited.add(start)
        previous, current = start, min(adjacency[start])
        while current != start:
            cycle.append(current)
            visited.add(current)
            first, second = adjacency[current]
            previous, current = current, second if first == previous else first
        cycles.append(tuple(cycle))
    cycles.sort(key=lambda cycle: (len(cycle), cycle[0]))
    return cycles


def build_factor(
    d1: ChainDecomposition,
    d2: ChainDecomposition,
    ell: int,
    check_disjoint: bool = True,
) -> CycleFactor:
    """
    Cycle factor of the middle ``2*ell`` levels from two edge-disjoint SCDs.

    Raises:
        ValidationError: On a dimension mismatch, a bad ``ell`` or SCDs sharing a chain edge.
    """
    if d1.n != d2.n:
        raise ValidationError(f"Dimension mismatch: {d1.n} vs {d2.n}")
    lo, hi = band_limits(d1.n, ell)
    if check_disjoint and not edge_disjoint(d1, d2):
        raise ValidationError("The two decompositions share a chain edge")
    first = alternating_matching(restrict_chains(d1, lo, hi), d1.n)
    second = alternating_matching(restrict_chains(d2, lo, hi), d2.n)
    cycles = extract_cycles(adjacency_from_edges([first.edges, second.edges]), d1.n)
    logger.debug("Factor of Q_%d levels %d..%d: %d cycles", d1.n, lo, hi, len(cycles))
    return CycleFactor(dimension=d1.n, lo=lo, hi=hi, cycles=tuple(cycles))


def verify_factor(factor: CycleFactor, subject: str = "cycle factor") -> VerificationReport:
    """Check cover, disjointness, cube edges inside the band and even lengths of at least four."""
    n = factor.dimension
    seen: set[int] = set()
    repeated = None
    for cycle in factor.cycles:
        for v in cycle:
            if v in seen and repeated is None:
                repeated = v
            seen.add(v)
    expected = band_size(n, factor.lo, factor.hi)
    outside = next((v for v in seen if not factor.lo <= v.bit_count() <= factor.hi), None)

    bad_edge = None
    for cycle in factor.cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            if (a ^ b).bit_count() != 1:
                bad_edge = f"{to_text(a, n)} {to_text(b, n)}"
                break
        if bad_edge:
            break
    short = next((c for c in factor.cycles if len(c) < 4 or len(c) % 2), None)

    checks = [
        CheckResult(
            name="disjoint",
            passed=repeated is None,
            witness=None if repeated is None else to_text(repeated, n),
        ),
        CheckResult(
            name="cover",
            passed=len(seen) == expected and outside is None,
            witness=None if len(seen) == expected else f"{len(seen)} of {expected} vertices",
        ),
        CheckResult(name="edges", passed=bad_edge is None, witness=bad_edge),
        CheckResult(
            name="lengths",
            passed=short is None,
            witness=None if short is None else f"cycle of length {len(short)}",
        ),
    ]
    return VerificationReport(subject=subject, passed=all(c.passed for c in checks), checks=checks)


def factor_census(factor: CycleFactor) -> CensusRecord:
    histogram = Counter(len(cycle) for cycle in factor.cycles)
    return CensusRecord(
        n=factor.n,
        ell=factor.ell,
        cycles=len(factor.cycles),
        histogram=dict(sorted(histogram.items())),
    )


class TableKind(StrEnum):
    """SCD pairs used for the cycle-count tables."""

    D0 = "d0"
    PRODUCT = "product"


def scd_pair(kind: TableKind, n: int) -> tuple[ChainDecomposition, ChainDecomposition]:
    """The two edge-disjoint SCDs of Q_{2n+1} behind a table."""
    if kind is TableKind.D0:
        d0 = scd_d0_product(2 * n + 1)
        return d0, complement_scd(d0)
    return product_pair(n)


def table_row(kind: TableKind, n: int) -> list[int]:
    """Cycle counts for ``ell = 1..n+1``."""
    d1, d2 = scd_pair(kind, n)
    if not edge_disjoint(d1, d2):
        raise VerificationError(f"{kind} pair for n={n} is not edge-disjoint")
    counts = [len(build_factor(d1, d2, ell, check_disjoint=False).cycles) for ell in range(1, n + 2)]
    logger.info("Table %s row %d: %s", kind, n, counts)
    return counts


def format_table_row(n: int, counts: Sequence[int]) -> str:
    return f"{n}: " + " ".join(str(c) for c in counts)


def parse_table(text: str) -> dict[int, list[int]]:
    """
    Parse table rows ``n: c1 c2 ...``.

    Raises:
        ValidationError: On a malformed row.
    """
    rows = {}
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        head, sep, tail = line.partition(":")
        try:
            if not sep:
                raise ValueError(line)
            rows[int(head)] = [int(token) for token in tail.split()]
        except ValueError as exc:
            raise ValidationError(f"Line {number}: malformed table row") from exc
    return rows
