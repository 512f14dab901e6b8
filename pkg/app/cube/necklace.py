"""
Necklace graphs and edge-disjoint symmetric chain decompositions in them.

A necklace is a rotation class of bitstrings, named by its lexicographically
smallest rotation. ``N_n`` joins a necklace ``x`` to ``y`` once for every
0-bit of ``x``'s representative whose flip lands in the class of ``y``; an
edge instance is therefore the pair ``(lower representative, position)``.
Levels 0 and n are left out.

For prime ``n`` every chain of ``N_n`` lifts to ``n`` rotated chains of Q_n,
so ``k`` instance-disjoint SCDs of ``N_n`` give ``k`` edge-disjoint SCDs of
Q_n once the two outermost vertices are attached.
"""

from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass, field

from app.core.exceptions import BudgetExceededError, ValidationError
from app.core.logging import get_logger
from app.cube.bitstrings import flip, level, to_bits, to_text
from app.cube.scd import ChainDecomposition
from app.utils.helpers import is_prime

logger = get_logger(__name__)

DEFAULT_BUDGET = 5_000_000


def rotate(x: int, n: int, r: int) -> int:
    """Cyclic shift to the left by ``r`` positions."""
    r %= n
    mask = (1 << n) - 1
    return ((x << r) | (x >> (n - r))) & mask if r else x


def necklace_rep(x: int, n: int) -> int:
    """Lexicographically smallest rotation."""
    return min(rotate(x, n, r) for r in range(n))


def rotation_offset(x: int, rep: int, n: int) -> int:
    """
    Smallest ``r`` with ``rotate(rep, n, r) == x``.

    Raises:
        ValidationError: If ``x`` is not a rotation of ``rep``.
    """
    for r in range(n):
        if rotate(rep, n, r) == x:
            return r
    raise ValidationError(f"{to_text(x, n)} is not a rotation of {to_text(rep, n)}")


@dataclass
class NecklaceGraph:
    """The multigraph ``N_n`` on necklaces of levels ``1..n-1``."""

    n: int
    levels: dict[int, list[int]]
    up: dict[int, list[tuple[int, int]]]
    down: dict[int, list[tuple[int, int]]]

    def weight(self, rep: int) -> int:
        return rep.bit_count()

    @property
    def nodes(self) -> list[int]:
        return [rep for k in sorted(self.levels) for rep in self.levels[k]]

    def multiplicity(self, lower: int, upper: int) -> int:
        return sum(1 for _, target in self.up[lower] if target == upper)

    def level_sizes(self) -> list[int]:
        return [len(self.levels[k]) for k in sorted(self.levels)]


def build_necklace_graph(n: int) -> NecklaceGraph:
    """
    Necklaces of length ``n`` with their labelled multiedges.

    ``up[x]`` lists ``(position, upper)`` for every 0-bit of ``x``;
    ``down[y]`` lists the ``(lower, position)`` instances arriving at ``y``.

    Raises:
        ValidationError: If ``n < 2``.
    """
    if n < 2:
        raise ValidationError(f"Necklace graphs need n >= 2, got {n}")
    levels = {k: sorted({necklace_rep(x, n) for x in level(n, k)}) for k in range(1, n)}
    up: dict[int, list[tuple[int, int]]] = {}
    down: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for k in range(1, n):
        for rep in levels[k]:
            edges = []
            if k < n - 1:
                for position, symbol in enumerate(to_text(rep, n), start=1):
                    if symbol == "0":
                        target = necklace_rep(flip(rep, n, position), n)
                        edges.append((position, target))
                        down[target].append((rep, position))
            up[rep] = edges
    logger.debug("N_%d: level sizes %s", n, [len(levels[k]) for k in range(1, n)])
    return NecklaceGraph(n=n, levels=levels, up=up, down=dict(down))


@dataclass(frozen=True)
class NecklaceChain:
    """Necklace representatives bottom-up with the flip position used after each."""

    n: int
    nodes: tuple[int, ...]
    positions: tuple[int, ...]

    @property
    def bottom(self) -> int:
        return self.nodes[0]

    @property
    def top(self) -> int:
        return self.nodes[-1]

    def instances(self) -> list[tuple[int, int]]:
        return list(zip(self.nodes, self.positions))

    def __str__(self) -> str:
        parts = [f"{to_text(node, self.n)}@{position}" for node, position in self.instances()]
        return " ".join([*parts, to_text(self.top, self.n)])


@dataclass(frozen=True)
class NecklaceSCD:
    """A decomposition of ``N_n`` into symmetric chains."""

    n: int
    chains: tuple[NecklaceChain, ...]

    def instances(self) -> set[tuple[int, int]]:
        return {instance for chain in self.chains for instance in chain.instances()}

    def to_text(self) -> str:
        return "\n".join(str(chain) for chain in sorted(self.chains, key=lambda c: c.nodes))


def parse_necklace_scd(text: str) -> NecklaceSCD:
    """
    Parse the necklace SCD text format, one chain per line.

    Raises:
        ValidationError: On a malformed line.
    """
    chains = []
    n: int | None = None
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        nodes, positions = [], []
        try:
            for token in tokens[:-1]:
                word, _, position = token.partition("@")
                nodes.append(word)
                positions.append(int(position))
            nodes.append(tokens[-1])
        except ValueError as exc:
            raise ValidationError(f"Line {number}: bad flip position") from exc
        lengths = {len(word) for word in nodes}
        if len(lengths) != 1 or (n is not None and lengths != {n}):
            raise ValidationError(f"Line {number}: necklaces of different lengths")
        n = lengths.pop()
        chains.append(NecklaceChain(n, tuple(to_bits(word) for word in nodes), tuple(positions)))
    if n is None:
        raise ValidationError("No chains in input")
    return NecklaceSCD(n, tuple(chains))


def verify_necklace_scd(g: NecklaceGraph, scd: NecklaceSCD) -> list[str]:
    """Problems found in ``scd``; an empty list means it is an SCD of ``N_n``."""
    problems = []
    covered: dict[int, int] = defaultdict(int)
    for chain in scd.chains:
        for node in chain.nodes:
            covered[node] += 1
        for index, (node, position) in enumerate(chain.instances()):
            following = chain.nodes[index + 1]
            if (position, following) not in g.up.get(node, []):
                problems.append(f"{to_text(node, g.n)}@{position} does not lead to {to_text(following, g.n)}")
        if g.weight(chain.bottom) + g.weight(chain.top) != g.n:
            problems.append(f"chain {chain} is not symmetric")
    for node in g.nodes:
        if covered.get(node, 0) != 1:
            problems.append(f"{to_text(node, g.n)} covered {covered.get(node, 0)} times")
    return problems


def instance_disjoint(scds: Sequence[NecklaceSCD]) -> bool:
    seen: set[tuple[int, int]] = set()
    for scd in scds:
        instances = scd.instances()
        if not seen.isdisjoint(instances):
            return False
        seen |= instances
    return True


@dataclass
class _OpenChain:
    nodes: list[int]
    positions: list[int]


@dataclass
class NecklaceSearch:
    """
    Depth-first search for ``k`` instance-disjoint SCDs of ``N_n``.

    Chains grow from the middle level outward one level pair at a time; each
    level pair is filled for every decomposition before the next one starts.
    A new lower node joins the bottom of a chain that spans the current range
    and that chain's top then climbs to a node of the new upper level. The
    up-instance used at the first node of the highest level below the middle
    increases with the decomposition index, which removes reorderings.
    """

    graph: NecklaceGraph
    k: int
    budget: int = DEFAULT_BUDGET
    nodes: int = 0
    _used: set[tuple[int, int]] = field(default_factory=set)
    _chains: list[list[_OpenChain]] = field(default_factory=list)
    _open: list[list[int]] = field(default_factory=list)
    _anchor_positions: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValidationError(f"k must be positive, got {self.k}")
        n = self.graph.n
        middle = (n - 1) // 2 if n % 2 else n // 2
        self._layers: list[tuple[int | None, int | None]] = []
        if n % 2:
            self._layers.append((None, middle + 1))
            for step in range(1, middle):
                self._layers.append((middle - step, middle + 1 + step))
        else:
            for step in range(1, middle):
                self._layers.append((middle - step, middle + step))
        self._middle = middle
        anchor_level = (n - 1) // 2
        self._anchor = self.graph.levels[anchor_level][0] if anchor_level >= 1 else None

    def _crossings(self) -> dict[int, int]:
        """Chains of one SCD crossing each level pair ``(j, j+1)``."""
        sizes = {k: len(nodes) for k, nodes in self.graph.levels.items()}
        return {j: min(sizes[j], sizes[j + 1]) for j in range(1, self.graph.n - 1)}

    def capacity_violation(self) -> int | None:
        """A level ``j`` whose pair ``(j, j+1)`` has fewer instances than ``k`` SCDs need."""
        for j, crossing in self._crossings().items():
            available = sum(len(self.graph.up[rep]) for rep in self.graph.levels[j])
            if self.k * crossing > available:
                return j
        return None

    def run(self) -> list[NecklaceSCD] | None:
        """
        Returns:
            list | None: The decompositions, or None when none exist.

        Raises:
            BudgetExceededError: If the node budget runs out first.
        """
        violation = self.capacity_violation()
        if violation is not None:
            logger.info(
                "N_%d cannot hold %d SCDs: levels %d/%d lack instances", self.graph.n, self.k, violation, violation + 1
            )
            return None
        middle_nodes = self.graph.levels[self._middle]
        self._chains = [[_OpenChain([rep], []) for rep in middle_nodes] for _ in range(self.k)]
        self._open = [list(range(len(middle_nodes))) for _ in range(self.k)]
        self._anchor_positions = [0] * self.k
        found = self._layer(0, 0)
        outcome = "found" if found else "exhausted"
        logger.info("Search N_%d k=%d: %s after %d nodes", self.graph.n, self.k, outcome, self.nodes)
        if not found:
            return None
        return [self._snapshot(s) for s in range(self.k)]

    def _snapshot(self, s: int) -> NecklaceSCD:
        chains = tuple(
            NecklaceChain(self.graph.n, tuple(chain.nodes), tuple(chain.positions)) for chain in self._chains[s]
        )
        return NecklaceSCD(self.graph.n, chains)

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(
                f"Search in N_{self.graph.n} for {self.k} SCDs exceeded {self.budget} nodes", nodes=self.nodes
            )

    def _anchor_ok(self, s: int, node: int, position: int) -> bool:
        if node != self._anchor:
            return True
        if s > 0 and position <= self._anchor_positions[s - 1]:
            return False
        self._anchor_positions[s] = position
        return True

    def _layer(self, layer: int, s: int) -> bool:
        if layer == len(self._layers):
            return True
        if s == self.k:
            return self._layer(layer + 1, 0)
        if not self._others_feasible(layer, s):
            return False
        lower, _ = self._layers[layer]
        if lower is None:
            return self._attach_upper(layer, s, 0, list(self._open[s]), set())
        return self._attach_lower(layer, s, 0, [])

    def _others_feasible(self, layer: int, s: int) -> bool:
        """Every decomposition still to be extended at this layer has some free instance for each new node."""
        lower, upper = self._layers[layer]
        for other in range(s, self.k):
            chains = [self._chains[other][c] for c in self._open[other]]
            bottoms = {chain.nodes[0] for chain in chains}
            tops = {chain.nodes[-1] for chain in chains}
            if lower is not None:
                for node in self.graph.levels[lower]:
                    if not any(target in bottoms and (node, p) not in self._used for p, target in self.graph.up[node]):
                        return False
            if upper is not None:
                for node in self.graph.levels[upper]:
                    arriving = self.graph.down.get(node, [])
                    if not any(source in tops and (source, p) not in self._used for source, p in arriving):
                        return False
        return True

    def _attach_lower(self, layer: int, s: int, index: int, selected: list[int]) -> bool:
        lower, _ = self._layers[layer]
        assert lower is not None
        nodes = self.graph.levels[lower]
        if index == len(nodes):
            return self._attach_upper(layer, s, 0, selected, set())
        node = nodes[index]
        chains = self._chains[s]
        for c in self._open[s]:
            if c in selected:
                continue
            chain = chains[c]
            for position, target in self.graph.up[node]:
                if target != chain.nodes[0] or (node, position) in self._used:
                    continue
                if not self._anchor_ok(s, node, position):
                    continue
                self._tick()
                self._used.add((node, position))
                chain.nodes.insert(0, node)
                chain.positions.insert(0, position)
                selected.append(c)
                if self._attach_lower(layer, s, index + 1, selected):
                    return True
                selected.pop()
                chain.nodes.pop(0)
                chain.positions.pop(0)
                self._used.discard((node, position))
        return False

    def _attach_upper(self, layer: int, s: int, index: int, selected: list[int], taken: set[int]) -> bool:
        _, upper = self._layers[layer]
        assert upper is not None
        if index == len(selected):
            previous = self._open[s]
            self._open[s] = list(selected)
            if self._layer(layer, s + 1):
                return True
            self._open[s] = previous
            return False
        chain = self._chains[s][selected[index]]
        top = chain.nodes[-1]
        for position, target in self.graph.up[top]:
            if target in taken or target.bit_count() != upper or (top, position) in self._used:
                continue
            if not self._anchor_ok(s, top, position):
                continue
            self._tick()
            self._used.add((top, position))
            chain.nodes.append(target)
            chain.positions.append(position)
            taken.add(target)
            if self._attach_upper(layer, s, index + 1, selected, taken):
                return True
            taken.discard(target)
            chain.nodes.pop()
            chain.positions.pop()
            self._used.discard((top, position))
        return False


def search_disjoint_scds(g: NecklaceGraph, k: int, budget: int = DEFAULT_BUDGET) -> list[NecklaceSCD] | None:
    """
    ``k`` pairwise instance-disjoint SCDs of ``N_n``, or None if none exist.

    Raises:
        BudgetExceededError: If the search needs more than ``budget`` nodes.
    """
    return NecklaceSearch(g, k, budget).run()


def lift_chain(chain: NecklaceChain, offset: int) -> list[int]:
    """The chain of Q_n that starts at ``rotate(bottom, offset)`` and follows the chain's flips."""
    n = chain.n
    vertex = rotate(chain.bottom, n, offset)
    vertices = [vertex]
    for index, (node, position) in enumerate(chain.instances()):
        shifted = (position - 1 - offset) % n + 1
        vertex = flip(vertex, n, shifted)
        vertices.append(vertex)
        offset = rotation_offset(vertex, chain.nodes[index + 1], n)
    return vertices


def lift_to_cube(scds: Sequence[NecklaceSCD]) -> list[ChainDecomposition]:
    """
    Lift SCDs of ``N_n`` to SCDs of Q_n for prime ``n``.

    Every chain becomes ``n`` rotated chains. In each decomposition one lifted
    copy of the chain through level 1 is extended by the all-zero and all-one
    vertices; the copies are chosen so that no two decompositions share an
    extension edge.

    Raises:
        ValidationError: If ``n`` is not prime, a full-length chain is missing,
            or there are too many decompositions to keep the extension edges apart.
    """
    if not scds:
        return []
    n = scds[0].n
    if not is_prime(n):
        raise ValidationError(f"Lifting needs a prime n, got {n}")
    if n <= 2 * (len(scds) - 1):
        raise ValidationError(f"Cannot keep {len(scds)} lifts of N_{n} edge-disjoint at the outer levels")
    full = (1 << n) - 1
    used_bottoms: set[int] = set()
    used_tops: set[int] = set()
    lifted = []
    for scd in scds:
        long_chains = [chain for chain in scd.chains if len(chain.nodes) == n - 1]
        if len(long_chains) != 1:
            raise ValidationError(f"Expected one chain from level 1 to level {n - 1}, found {len(long_chains)}")
        long_chain = long_chains[0]
        paths = []
        for chain in scd.chains:
            if chain is long_chain:
                continue
            paths.extend(lift_chain(chain, offset) for offset in range(n))
        copies = [lift_chain(long_chain, offset) for offset in range(n)]
        chosen = next(
            index
            for index, copy in enumerate(copies)
            if copy[0] not in used_bottoms and copy[-1] not in used_tops
        )
        for index, copy in enumerate(copies):
            if index == chosen:
                used_bottoms.add(copy[0])
                used_tops.add(copy[-1])
                paths.append([0, *copy, full])
            else:
                paths.append(copy)
        lifted.append(ChainDecomposition.from_paths(n, paths))
    logger.debug("Lifted %d SCDs of N_%d", len(lifted), n)
    return lifted
