"""
Hamilton cycle through the middle four levels of Q_{2n+1}.

The levels ``n-1 .. n+2`` are covered by a cycle factor built from lexical
matchings: paths ``P`` between levels ``n+1`` and ``n+2``, their mirror image
``f(P)`` under complement-and-reverse between levels ``n-1`` and ``n``, and a
set ``E`` of edges between levels ``n`` and ``n+1`` glueing path ends together.
Walking a factor cycle from one first vertex of ``P`` to the next applies
``rho`` to the corresponding rooted tree, so factor cycles are ``rho``-orbits.

Flippable pairs of first vertices give six-cycles that meet two factor cycles;
the symmetric difference of the factor with the six-cycles of a spanning tree
of the orbit graph is a single Hamilton cycle.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from app.core.exceptions import ValidationError, VerificationError
from app.core.logging import get_logger
from app.cube.bitstrings import (
    DyckClass,
    classify_word,
    comp_rev_bits,
    dyck_words,
    heights,
    level,
    split_first_return,
    split_last_block,
    to_bits,
    to_text,
)
from app.cube.factor import CycleFactor, adjacency_from_edges, extract_cycles, verify_factor
from app.cube.lexical import MatchingId, down_partner, lex_down, lex_matching, up_partner
from app.cube.rotations import (
    plane_trivalent_tree_count,
    pull,
    pull_positions,
    rho_orbits,
    rho_word,
    star_tree,
)
from app.models.responses import CheckResult, OrbitCensus, VerificationReport

logger = get_logger(__name__)

Edge = tuple[int, int]

# Star assignments in cycle order; consecutive entries differ in one symbol.
SIX_CYCLE_ORDER = ("100", "110", "010", "011", "001", "101")


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def _path_edges(path: Sequence[int]) -> list[Edge]:
    return [_edge(a, b) for a, b in zip(path, path[1:])]


def _require_n(n: int) -> None:
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")


@dataclass(frozen=True)
class PathSystem:
    """
    Paths of ``M^n ∪ M^{n+1}`` between levels ``n+1`` and ``n+2``.

    Every path starts at a first vertex (unmatched by ``M^{n+1}``) on level
    ``n+1`` and ends at a last vertex on the same level. Isolated vertices of
    level ``n+1`` are matched by neither matching.
    """

    n: int
    paths: dict[int, tuple[int, ...]]
    isolated: frozenset[int]

    @property
    def dimension(self) -> int:
        return 2 * self.n + 1

    @cached_property
    def first(self) -> frozenset[int]:
        return frozenset(self.paths)

    @cached_property
    def last(self) -> frozenset[int]:
        return frozenset(path[-1] for path in self.paths.values())

    def edges(self) -> set[Edge]:
        return {edge for path in self.paths.values() for edge in _path_edges(path)}

    def path_edges(self, first: int) -> list[Edge]:
        return _path_edges(self.paths[first])

    def text(self, v: int) -> str:
        return to_text(v, self.dimension)


def build_paths(n: int) -> PathSystem:
    """
    Walk every path of ``M^n ∪ M^{n+1}`` on levels ``n+1, n+2`` from its first vertex.

    Raises:
        ValidationError: If ``n < 1``.
        VerificationError: If an up-step of ``M^n`` has no ``M^{n+1}`` partner back down.
    """
    _require_n(n)
    dimension = 2 * n + 1
    paths: dict[int, tuple[int, ...]] = {}
    isolated = []
    for x in level(dimension, n + 1):
        starts = up_partner(dimension, n, x) is not None
        continues = up_partner(dimension, n + 1, x) is not None
        if not starts and not continues:
            isolated.append(x)
        if not starts or continues:
            continue
        path = [x]
        current = x
        while (upper := up_partner(dimension, n, current)) is not None:
            lower = down_partner(dimension, n + 1, upper)
            if lower is None:
                raise VerificationError(f"{to_text(upper, dimension)} is a dead end of the path system")
            path += [upper, lower]
            current = lower
        paths[x] = tuple(path)
    logger.debug("Path system for n=%d: %d paths, %d isolated", n, len(paths), len(isolated))
    return PathSystem(n=n, paths=paths, isolated=frozenset(isolated))


def path_end(x: str) -> str:
    """Last vertex ``(u, 0, 1, v)`` of the path whose first vertex is ``(1, u, 0, v)``."""
    u, v = split_first_return(x)
    return u + "01" + v


def _below_once_split(x: str) -> tuple[str, str]:
    """``x = (u, 0, 1, v)`` with ``u`` balanced, split at the only step below zero."""
    levels = heights(x)
    dip = levels.index(-1) - 1
    return x[:dip], x[dip + 2 :]


def in_l_prime(x: str) -> bool:
    """Last vertex ``(u, 0, 1, v)`` whose tail ``v`` touches zero."""
    _, v = _below_once_split(x)
    return classify_word(v) is DyckClass.TOUCHES_ZERO


def in_f_prime(x: str) -> bool:
    """First vertex ``(1, u, 0, v, 1, w)`` with a non-empty middle part ``v``."""
    _, rest = split_first_return(x)
    v, _ = split_last_block(rest)
    return v != ""


@dataclass(frozen=True)
class MiddleEdges:
    """Edges between levels ``n`` and ``n+1`` taken from three lexical matchings."""

    top: frozenset[Edge]
    middle: frozenset[Edge]
    low: frozenset[Edge]

    @property
    def all(self) -> frozenset[Edge]:
        return self.top | self.middle | self.low


def _lower_edges(dimension: int, n: int, index: int, vertices: Iterable[int]) -> frozenset[Edge]:
    mid = MatchingId(dimension, n, index)
    edges = set()
    for y in vertices:
        x = lex_down(mid, y)
        if x is None:
            raise VerificationError(f"{to_text(y, dimension)} is unmatched by {index}-lexical matching")
        edges.add((x, y))
    return frozenset(edges)


def build_E(n: int, paths: PathSystem | None = None) -> MiddleEdges:
    """
    Glue edges between levels ``n`` and ``n+1``.

    First vertices, last vertices outside ``L'`` and isolated vertices use the
    ``n``-lexical matching; isolated vertices also use the ``(n-1)``-lexical
    matching and ``L'`` uses the ``(n-2)``-lexical one.
    """
    _require_n(n)
    ps = paths or build_paths(n)
    dimension = 2 * n + 1
    l_prime = {x for x in ps.last if in_l_prime(ps.text(x))}
    top = _lower_edges(dimension, n, n, ps.first | (ps.last - l_prime) | ps.isolated)
    middle = _lower_edges(dimension, n, n - 1, ps.isolated)
    low = _lower_edges(dimension, n, n - 2, l_prime) if l_prime else frozenset()
    return MiddleEdges(top=top, middle=middle, low=low)


@dataclass(frozen=True)
class MiddleFourFactor:
    n: int
    paths: PathSystem
    glue: MiddleEdges
    edges: frozenset[Edge]
    cycles: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return 2 * self.n + 1

    @cached_property
    def adjacency(self) -> dict[int, list[int]]:
        return adjacency_from_edges([self.edges])

    def as_cycle_factor(self) -> CycleFactor:
        return CycleFactor(dimension=self.dimension, lo=self.n - 1, hi=self.n + 2, cycles=self.cycles)


def mirror_edges(edges: Iterable[Edge], dimension: int) -> set[Edge]:
    return {_edge(comp_rev_bits(a, dimension), comp_rev_bits(b, dimension)) for a, b in edges}


def build_middle4_factor(n: int) -> MiddleFourFactor:
    """
    The cycle factor ``P ∪ f(P) ∪ E`` of levels ``n-1 .. n+2``.

    Raises:
        VerificationError: If some band vertex does not end up with degree two.
    """
    ps = build_paths(n)
    glue = build_E(n, ps)
    upper = ps.edges()
    edges = frozenset(upper | mirror_edges(upper, ps.dimension) | glue.all)
    cycles = extract_cycles(adjacency_from_edges([edges]), ps.dimension)
    logger.info("Middle-four factor for n=%d: %d cycles", n, len(cycles))
    return MiddleFourFactor(n=n, paths=ps, glue=glue, edges=edges, cycles=tuple(cycles))


def walk_to_next_first(factor: MiddleFourFactor, x: int) -> list[int]:
    """
    Vertices visited after the path of ``x``, up to and including the next first vertex.

    Raises:
        ValidationError: If ``x`` is not a first vertex.
    """
    ps = factor.paths
    if x not in ps.paths:
        raise ValidationError(f"{ps.text(x)} is not a first vertex")
    path = ps.paths[x]
    previous, current = path[-2], path[-1]
    visited = []
    while True:
        first, second = factor.adjacency[current]
        previous, current = current, second if first == previous else first
        visited.append(current)
        if current in ps.first:
            return visited


def next_first_vertex(factor: MiddleFourFactor, x: int) -> int:
    return walk_to_next_first(factor, x)[-1]


def rho_first_vertex(x: int, n: int) -> int:
    """``rho`` on a first vertex read as a tree with a trailing 0."""
    return to_bits(rho_word(to_text(x, 2 * n + 1) + "0")[:-1])


@dataclass(frozen=True, order=True)
class FlippablePair:
    """First vertices ``x`` and ``y`` whose trees differ by one pull at ``index``."""

    x: int
    y: int
    index: int = field(compare=False)


def enumerate_flippable_pairs(n: int, paths: PathSystem | None = None) -> list[FlippablePair]:
    _require_n(n)
    dimension = 2 * n + 1
    firsts = paths.first if paths else {
        to_bits(x) for x in dyck_words(dimension, n + 1) if classify_word(x) is DyckClass.TOUCHES_ZERO
    }
    pairs = []
    for x in firsts:
        word = to_text(x, dimension) + "0"
        for index in pull_positions(word):
            pairs.append(FlippablePair(x=x, y=to_bits(pull(word, index)[:-1]), index=index))
    return sorted(pairs)


def six_cycle_template(pair: FlippablePair, n: int) -> str:
    """
    Template over ``{0, 1, *}`` of the six-cycle of a flippable pair.

    ``x = (1,u1,1,u2,...,1,ud,1,1,0,w,0,vd,0,...,v1,0,v0)`` becomes
    ``(u1,0,...,ud,0,1,*,*,w,*,vd,1,...,v1,1,v0)``.
    """
    x = to_text(pair.x, 2 * n + 1)
    index = pair.index
    levels = heights(x)
    depth = levels[index]
    ups = [max(j for j in range(index) if x[j] == "1" and levels[j] == h - 1) for h in range(1, depth + 1)]
    ups.append(index)
    us = [x[ups[h] + 1 : ups[h + 1]] for h in range(depth)]

    rest = x[index + 3 :]
    parts = []
    height, start = depth + 1, 0
    for position, symbol in enumerate(rest):
        height += 1 if symbol == "1" else -1
        if height == depth - len(parts):
            parts.append(rest[start:position])
            start = position + 1
            if len(parts) == depth + 1:
                break
    if len(parts) != depth + 1:
        raise ValidationError(f"{x} has no flippable pattern at {index}")
    w, vs, v0 = parts[0], parts[1:], rest[start:]
    return "".join(u + "0" for u in us) + "1**" + w + "*" + "".join(v + "1" for v in vs) + v0


def expand_template(template: str) -> tuple[int, ...]:
    """Six vertices of a template in cycle order."""
    slots = [i for i, symbol in enumerate(template) if symbol == "*"]
    if len(slots) != 3:
        raise ValidationError(f"Template {template} needs exactly three stars")
    vertices = []
    for assignment in SIX_CYCLE_ORDER:
        chars = list(template)
        for slot, symbol in zip(slots, assignment):
            chars[slot] = symbol
        vertices.append(to_bits("".join(chars)))
    return tuple(vertices)


@dataclass(frozen=True)
class SixCycle:
    pair: FlippablePair
    template: str
    vertices: tuple[int, ...]

    def edges(self) -> set[Edge]:
        return {_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:] + self.vertices[:1])}


def six_cycle(pair: FlippablePair, paths: PathSystem) -> SixCycle:
    """
    The six-cycle of a flippable pair, checked against the two paths it joins.

    Raises:
        VerificationError: If the cycle does not meet the path of ``x`` in two
            non-incident edges and the path of ``y`` in exactly one edge.
    """
    n = paths.n
    template = six_cycle_template(pair, n)
    cycle = SixCycle(pair=pair, template=template, vertices=expand_template(template))
    edges = cycle.edges()
    on_x = edges & set(paths.path_edges(pair.x))
    on_y = edges & set(paths.path_edges(pair.y))
    shared_x = [v for edge in on_x for v in edge]
    if len(on_x) != 2 or len(set(shared_x)) != 4 or len(on_y) != 1:
        raise VerificationError(
            f"Six-cycle {template} of ({paths.text(pair.x)}, {paths.text(pair.y)}) "
            f"meets the paths in {len(on_x)} and {len(on_y)} edges"
        )
    return cycle


@dataclass
class AuxGraph:
    """Multigraph on ``rho``-orbits; each flippable pair is an edge labelled ``pair``."""

    n: int
    graph: nx.MultiGraph
    orbits: list[list[str]]
    orbit_of: dict[int, int]

    @property
    def root(self) -> int:
        return self.orbit_of[to_bits(star_tree(self.n)[:-1])]


def build_aux_graph(n: int, pairs: Sequence[FlippablePair] | None = None) -> AuxGraph:
    """
    Raises:
        VerificationError: If the orbit graph is disconnected.
    """
    _require_n(n)
    orbits = rho_orbits(n)
    orbit_of = {to_bits(word[:-1]): index for index, orbit in enumerate(orbits) for word in orbit}
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(len(orbits)))
    for pair in pairs if pairs is not None else enumerate_flippable_pairs(n):
        graph.add_edge(orbit_of[pair.x], orbit_of[pair.y], pair=pair)
    if not nx.is_connected(graph):
        raise VerificationError(f"Orbit graph for n={n} is disconnected")
    logger.debug("Orbit graph for n=%d: %d nodes, %d edges", n, graph.number_of_nodes(), graph.number_of_edges())
    return AuxGraph(n=n, graph=graph, orbits=orbits, orbit_of=orbit_of)


def spanning_tree_pairs(aux: AuxGraph) -> list[FlippablePair]:
    """Breadth-first tree from the star's orbit, smallest pair on each tree edge."""
    pairs = []
    for u, v in nx.bfs_edges(aux.graph, aux.root, sort_neighbors=sorted):
        pairs.append(min(data["pair"] for data in aux.graph.get_edge_data(u, v).values()))
    if len(pairs) != aux.graph.number_of_nodes() - 1:
        raise VerificationError(f"Spanning tree for n={aux.n} has {len(pairs)} edges")
    return pairs


def join_cycles(factor: MiddleFourFactor, cycles: Iterable[SixCycle]) -> frozenset[Edge]:
    """Symmetric difference of the factor with the given six-cycles."""
    edges = set(factor.edges)
    for cycle in cycles:
        edges ^= cycle.edges()
    return frozenset(edges)


def verify_hamilton(cycle: Sequence[int], n: int) -> VerificationReport:
    """Factor checks on a single cycle over levels ``n-1 .. n+2``."""
    report = verify_factor(
        CycleFactor(dimension=2 * n + 1, lo=n - 1, hi=n + 2, cycles=(tuple(cycle),)),
        subject=f"hamilton n={n}",
    )
    return report


def hamilton_middle4(n: int) -> tuple[int, ...]:
    """
    Hamilton cycle of the middle four levels of Q_{2n+1}.

    Starts at the smallest vertex and leaves it towards its smaller neighbour.

    Raises:
        VerificationError: If joining does not produce a single verified cycle.
    """
    factor = build_middle4_factor(n)
    ps = factor.paths
    aux = build_aux_graph(n, enumerate_flippable_pairs(n, ps))
    sixes = [six_cycle(pair, ps) for pair in spanning_tree_pairs(aux)]
    cycles = extract_cycles(adjacency_from_edges([join_cycles(factor, sixes)]), ps.dimension)
    if len(cycles) != 1:
        raise VerificationError(f"Joining left {len(cycles)} cycles for n={n}")
    report = verify_hamilton(cycles[0], n)
    if not report.passed:
        raise VerificationError(f"Hamilton cycle for n={n} failed verification", report=report)
    logger.info("Hamilton cycle for n=%d: %d vertices", n, len(cycles[0]))
    return cycles[0]


def orbit_census(n: int, oracle: bool = True) -> OrbitCensus:
    orbits = len(rho_orbits(n))
    return OrbitCensus(n=n, orbits=orbits, trivalent_trees=plane_trivalent_tree_count(n) if oracle else None)


def _check(name: str, witness: str | None) -> CheckResult:
    return CheckResult(name=name, passed=witness is None, witness=witness)


def _report(subject: str, checks: list[CheckResult]) -> VerificationReport:
    return VerificationReport(subject=subject, passed=all(c.passed for c in checks), checks=checks)


def _first_mismatch(vertices: Iterable[int], expected: set[int], ps: PathSystem) -> str | None:
    actual = set(vertices)
    if actual == expected:
        return None
    odd = min(actual ^ expected)
    return f"{ps.text(odd)} ({len(actual)} vs {len(expected)})"


def _path_suite(ps: PathSystem) -> VerificationReport:
    n, dimension = ps.n, ps.dimension
    words = {x: ps.text(x) for x in level(dimension, n + 1)}
    by_class: dict[DyckClass, set[int]] = {}
    for x, word in words.items():
        by_class.setdefault(classify_word(word), set()).add(x)
    covered = sum(len(path) for path in ps.paths.values()) + len(ps.isolated)
    total = len(words) + len(level(dimension, n + 2))
    bad_end = next((x for x, path in ps.paths.items() if ps.text(path[-1]) != path_end(ps.text(x))), None)
    p0 = {x for x in ps.first if x & 1 == 0}
    p0_expected = {
        to_bits(w + "0") for w in dyck_words(2 * n, n + 1) if classify_word(w) is DyckClass.TOUCHES_ZERO
    }
    p1_expected = {to_bits(w + "1") for w in dyck_words(2 * n, n) if classify_word(w) is DyckClass.TOUCHES_ZERO}
    return _report(
        "paths",
        [
            _check("acyclic", None if covered == total else f"{covered} of {total} vertices on paths"),
            _check("first", _first_mismatch(ps.first, by_class.get(DyckClass.TOUCHES_ZERO, set()), ps)),
            _check("last", _first_mismatch(ps.last, by_class.get(DyckClass.BELOW_ONCE, set()), ps)),
            _check("isolated", _first_mismatch(ps.isolated, by_class.get(DyckClass.STRICTLY_POSITIVE, set()), ps)),
            _check("end-formula", None if bad_end is None else ps.text(bad_end)),
            _check("first-ending-0", _first_mismatch(p0, p0_expected, ps)),
            _check("first-ending-1", _first_mismatch(ps.first - p0, p1_expected, ps)),
        ],
    )


def _glue_suite(factor: MiddleFourFactor) -> VerificationReport:
    ps, glue = factor.paths, factor.glue
    dimension = ps.dimension

    def mirror(vertices: Iterable[int]) -> set[int]:
        return {comp_rev_bits(v, dimension) for v in vertices}

    def matched(name: str, part: frozenset[Edge], uppers: set[int], lowers: set[int]) -> CheckResult:
        images = [lower for lower, upper in part if upper in uppers]
        if len(images) != len(uppers):
            return _check(name, f"{len(images)} of {len(uppers)} vertices matched")
        return _check(name, _first_mismatch(images, lowers, ps) if len(set(images)) == len(images) else "collision")

    p0 = {x for x in ps.first if x & 1 == 0}
    p1 = set(ps.first) - p0
    l_prime = {x for x in ps.last if in_l_prime(ps.text(x))}
    rest = set(ps.last) - l_prime
    isolated = set(ps.isolated)
    lower_f1 = mirror(p1)
    top_images = {lower for lower, upper in glue.top if upper in isolated}
    heavy = sorted(x for x in ps.first if ps.text(x).startswith("11"))
    split = next((x for x in heavy if in_f_prime(ps.text(x)) != (ps.paths[x][-1] in l_prime)), None)
    return _report(
        "glue",
        [
            matched("first-ending-0", glue.top, p0, mirror(p0)),
            matched("first-ending-1", glue.top, p1, mirror(isolated)),
            _check("isolated-top", _first_mismatch(top_images, lower_f1, ps)),
            matched("isolated-middle", glue.middle, isolated, mirror(isolated)),
            matched("last", glue.top, rest, mirror(rest)),
            matched("last-prime", glue.low, l_prime, mirror(l_prime)),
            _check("first-prime", None if split is None else ps.text(split)),
        ],
    )


def _factor_suite(factor: MiddleFourFactor, orbit_count: int) -> VerificationReport:
    n, dimension = factor.n, factor.dimension
    upper = factor.paths.edges()
    lexical = {
        _edge(a, b)
        for index in (n, n + 1)
        for a, b in lex_matching(MatchingId(dimension, n - 1, index)).edges
    }
    mirrored = mirror_edges(upper, dimension)
    checks = list(verify_factor(factor.as_cycle_factor(), subject="factor").checks)
    checks.append(_check("mirror-lexical", None if mirrored == lexical else f"{len(mirrored ^ lexical)} edges differ"))
    checks.append(
        _check(
            "orbits",
            None if len(factor.cycles) == orbit_count else f"{len(factor.cycles)} cycles, {orbit_count} orbits",
        )
    )
    return _report("factor", checks)


def _rotation_suite(factor: MiddleFourFactor) -> VerificationReport:
    ps, n = factor.paths, factor.n
    wrong = light = None
    for x in sorted(ps.first):
        walk = walk_to_next_first(factor, x)
        if walk[-1] != rho_first_vertex(x, n) and wrong is None:
            wrong = ps.text(x)
        visits_isolated = any(v in ps.isolated for v in walk)
        if visits_isolated != ps.text(x).startswith("10") and light is None:
            light = ps.text(x)
    return _report("rotation", [_check("next-first", wrong), _check("isolated-visits", light)])


def _six_cycle_suite(ps: PathSystem, pairs: Sequence[FlippablePair]) -> VerificationReport:
    cycles: list[SixCycle] = []
    shape = None
    for pair in pairs:
        try:
            cycles.append(six_cycle(pair, ps))
        except VerificationError as exc:
            shape = shape or exc.message
    seen: dict[Edge, SixCycle] = {}
    overlap = None
    for cycle in cycles:
        for edge in cycle.edges():
            if edge in seen and overlap is None:
                overlap = f"{seen[edge].template} and {cycle.template}"
            seen[edge] = cycle
    interleaved = None
    by_first: dict[int, list[tuple[int, int]]] = {}
    for cycle in cycles:
        path_edges = ps.path_edges(cycle.pair.x)
        positions = sorted(path_edges.index(edge) for edge in cycle.edges() & set(path_edges))
        by_first.setdefault(cycle.pair.x, []).append((positions[0], positions[-1]))
    for x, spans in by_first.items():
        spans.sort()
        if any(b[0] <= a[1] for a, b in zip(spans, spans[1:])) and interleaved is None:
            interleaved = ps.text(x)
    return _report(
        "six-cycles",
        [_check("shape", shape), _check("edge-disjoint", overlap), _check("non-interleaved", interleaved)],
    )


def lemma_suite(n: int) -> list[VerificationReport]:
    """Every structural check on the factor, the orbits, the six-cycles and the final cycle."""
    factor = build_middle4_factor(n)
    ps = factor.paths
    pairs = enumerate_flippable_pairs(n, ps)
    reports = [
        _path_suite(ps),
        _glue_suite(factor),
        _factor_suite(factor, len(rho_orbits(n))),
        _rotation_suite(factor),
        _six_cycle_suite(ps, pairs),
    ]
    try:
        build_aux_graph(n, pairs)
        connected = None
    except VerificationError as exc:
        connected = exc.message
    reports.append(_report("orbit-graph", [_check("connected", connected)]))
    try:
        cycle = hamilton_middle4(n)
        reports.append(verify_hamilton(cycle, n))
    except VerificationError as exc:
        reports.append(exc.report or _report(f"hamilton n={n}", [_check("single-cycle", exc.message)]))
    return reports
