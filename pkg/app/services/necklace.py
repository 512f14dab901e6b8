"""
Necklace search with fixture persistence.
"""

from pathlib import Path

from app.core.exceptions import BudgetExceededError, NotFoundError, ValidationError, VerificationError
from app.cube.families import NECKLACE_SIZES
from app.cube.necklace import (
    NecklaceSCD,
    NecklaceSearch,
    build_necklace_graph,
    instance_disjoint,
    lift_to_cube,
    parse_necklace_scd,
    verify_necklace_scd,
)
from app.cube.scd import ChainDecomposition, pairwise_edge_disjoint, verify_scd
from app.models.responses import SearchReport
from app.services.base import BaseService


class NecklaceService(BaseService):
    """Runs the necklace search and stores its results under ``fixtures_dir``."""

    def fixture_path(self, n: int, k: int) -> Path:
        return Path(self.settings.fixtures_dir) / f"necklace-n{n}-k{k}.txt"

    def search(self, n: int, k: int, budget: int | None = None) -> tuple[SearchReport, list[NecklaceSCD]]:
        """
        Search for ``k`` instance-disjoint SCDs of ``N_n`` and persist them when found.

        Raises:
            ValidationError: For ``n < 2`` or ``k < 1``.
            BudgetExceededError: If the budget runs out; carries the node count.
        """
        self.check_dimension(n)
        if k < 1:
            raise ValidationError(f"k must be positive, got {k}")
        graph = build_necklace_graph(n)
        search = NecklaceSearch(graph, k, budget or self.settings.search_budget)
        found = search.run()
        if found is None:
            self.logger.info("N_%d has no %d disjoint SCDs (%d nodes)", n, k, search.nodes)
            return SearchReport(n=n, k=k, status="impossible", nodes=search.nodes), []
        for scd in found:
            problems = verify_necklace_scd(graph, scd)
            if problems:
                raise ValidationError(f"Search returned an invalid SCD: {problems[0]}")
        path = self.save(found, k)
        self.logger.info("Found %d SCDs of N_%d in %d nodes", k, n, search.nodes)
        return SearchReport(n=n, k=k, status="found", nodes=search.nodes, fixtures=[str(path)]), found

    def save(self, scds: list[NecklaceSCD], k: int) -> Path:
        path = self.fixture_path(scds[0].n, k)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n\n".join(scd.to_text() for scd in scds) + "\n", encoding="utf-8")
        return path

    def load(self, n: int, k: int) -> list[NecklaceSCD]:
        """
        Raises:
            NotFoundError: If no fixture exists.
            ValidationError: If the fixture does not hold ``k`` disjoint SCDs of ``N_n``.
        """
        path = self.fixture_path(n, k)
        if not path.exists():
            raise NotFoundError(f"No fixture at {path}")
        blocks = [block for block in path.read_text(encoding="utf-8").split("\n\n") if block.strip()]
        scds = [parse_necklace_scd(block) for block in blocks]
        graph = build_necklace_graph(n)
        if len(scds) != k or any(verify_necklace_scd(graph, scd) for scd in scds) or not instance_disjoint(scds):
            raise ValidationError(f"{path} does not hold {k} disjoint SCDs of N_{n}")
        return scds

    def family(self, n: int) -> list[NecklaceSCD]:
        """Fixture for ``n`` if present, otherwise a fresh search."""
        if n not in NECKLACE_SIZES:
            raise NotFoundError(f"No necklace family is known for n={n}; use 5 or 7")
        k = NECKLACE_SIZES[n]
        try:
            return self.load(n, k)
        except NotFoundError:
            self.logger.info("No fixture for N_%d, searching", n)
        report, found = self.search(n, k)
        if report.status != "found":
            raise ValidationError(f"N_{n} has no {k} disjoint SCDs")
        return found

    def lifted(self, n: int) -> list[ChainDecomposition]:
        """
        Lifted, verified SCDs of Q_n.

        Raises:
            BudgetExceededError: If no fixture exists and the search runs out of nodes.
        """
        try:
            lifted = lift_to_cube(self.family(n))
        except BudgetExceededError:
            self.logger.warning("Search for N_%d exceeded its budget", n)
            raise
        for index, scd in enumerate(lifted):
            self.require(verify_scd(scd, subject=f"necklace:{index} of Q_{n}"))
        if self.settings.verify_outputs and not pairwise_edge_disjoint(lifted):
            raise VerificationError(f"Lifted SCDs of Q_{n} share an edge")
        return lifted
