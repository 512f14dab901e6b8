"""
Cycle factors of the middle levels and the cycle-count tables.
"""

from app.config import Settings
from app.core.exceptions import ValidationError
from app.cube.factor import (
    CycleFactor,
    TableKind,
    band_limits,
    build_factor,
    factor_census,
    scd_pair,
    table_row,
    verify_factor,
)
from app.cube.scd import ChainDecomposition
from app.models.responses import CensusRecord
from app.services.base import BaseService
from app.services.scd import ScdService
from app.utils.helpers import format_histogram


class FactorService(BaseService):
    """Builds cycle factors of Q_{2n+1} from named SCD pairs."""

    def __init__(self, settings: Settings, scd: ScdService | None = None):
        super().__init__(settings)
        self.scd = scd or ScdService(settings)

    def pair(self, n: int, scds: str) -> tuple[ChainDecomposition, ChainDecomposition]:
        """
        Resolve ``scds``: ``product``, ``d0`` or two comma separated kinds such as ``d0,d0c``.

        Raises:
            ValidationError: If ``scds`` names neither a table pair nor two kinds.
        """
        dimension = self.check_dimension(2 * n + 1)
        if scds in (TableKind.D0, TableKind.PRODUCT):
            return scd_pair(TableKind(scds), n)
        kinds = [kind.strip() for kind in scds.split(",")]
        if len(kinds) != 2:
            raise ValidationError(f"Expected two SCD kinds, got {scds!r}")
        return self.scd.build(kinds[0], dimension), self.scd.build(kinds[1], dimension)

    def factor(self, n: int, ell: int, scds: str = "d0,d0c") -> CycleFactor:
        band_limits(2 * n + 1, ell)
        d1, d2 = self.pair(n, scds)
        factor = build_factor(d1, d2, ell)
        self.require(verify_factor(factor, subject=f"factor n={n} ell={ell}"))
        self.logger.info(
            "Factor n=%d ell=%d from %s: %s", n, ell, scds, format_histogram(factor_census(factor).histogram)
        )
        return factor

    def census(self, n: int, ell: int, scds: str = "d0,d0c") -> CensusRecord:
        return factor_census(self.factor(n, ell, scds))

    def table(self, kind: TableKind, upto: int) -> dict[int, list[int]]:
        """Rows ``1..upto`` of a cycle-count table."""
        if upto < 1:
            raise ValidationError(f"Table size must be positive, got {upto}")
        self.check_dimension(2 * upto + 1)
        return {n: table_row(kind, n) for n in range(1, upto + 1)}
