"""
Middle-four-levels Hamilton cycles, structural checks and orbit census.
"""

from app.cube.bitstrings import to_text
from app.cube.middle4 import hamilton_middle4, lemma_suite, orbit_census, verify_hamilton
from app.models.responses import OrbitCensus, VerificationReport
from app.services.base import BaseService

# Largest n for which the orbit census also runs the trivalent-tree oracle.
ORACLE_LIMIT = 10


class Middle4Service(BaseService):
    def hamilton(self, n: int) -> tuple[int, ...]:
        self.check_dimension(2 * n + 1)
        cycle = hamilton_middle4(n)
        self.require(verify_hamilton(cycle, n))
        return cycle

    def hamilton_lines(self, n: int, repeat_first: bool = False) -> list[str]:
        """One vertex per line, optionally closing the cycle with the first vertex."""
        lines = [to_text(v, 2 * n + 1) for v in self.hamilton(n)]
        return lines + lines[:1] if repeat_first else lines

    def check(self, n: int) -> list[VerificationReport]:
        self.check_dimension(2 * n + 1)
        reports = lemma_suite(n)
        failed = [report.subject for report in reports if not report.passed]
        if failed:
            self.logger.warning("n=%d failed suites: %s", n, ", ".join(failed))
        return reports

    def orbits(self, n: int, oracle: bool | None = None) -> OrbitCensus:
        self.check_dimension(2 * n + 1)
        return orbit_census(n, oracle=n <= ORACLE_LIMIT if oracle is None else oracle)
