"""
Construction of SCDs by kind name.

Kinds:

- ``d0`` / ``d0c``: D0 and its complement, any dimension;
- ``d1`` / ``d1c``: D1 and its complement, even dimension;
- ``lex:i0,i1,...``: union of lexical matchings, one index per level;
- ``product:<m>``: member ``m`` (0 or 1) of the product pair of an odd dimension;
- ``necklace:<m>``: lifted necklace SCD number ``m``, dimension 5 or 7;
- ``family:<m>``: member ``m`` of the largest known disjoint family.
"""

from collections.abc import Sequence

from app.config import Settings
from app.core.exceptions import NotFoundError, ValidationError
from app.cube.families import disjoint_family
from app.cube.product import product_pair
from app.cube.scd import (
    ChainDecomposition,
    complement_scd,
    disjointness_matrix,
    parse_scd_text,
    scd_d0_paren,
    scd_d1,
    scd_from_lexical,
    verify_scd,
)
from app.models.responses import DisjointnessReport, VerificationReport
from app.services.base import BaseService
from app.services.necklace import NecklaceService
from app.utils.helpers import parse_index_list

SIMPLE_KINDS = ("d0", "d0c", "d1", "d1c")
PARAMETRIC_KINDS = ("lex", "product", "necklace", "family")


class ScdService(BaseService):
    """Builds, verifies and compares SCDs named by kind."""

    def __init__(self, settings: Settings, necklace: NecklaceService | None = None):
        super().__init__(settings)
        self.necklace = necklace or NecklaceService(settings)

    def build(self, kind: str, n: int) -> ChainDecomposition:
        """
        Raises:
            ValidationError: For a kind that does not fit the dimension.
            NotFoundError: For an unknown kind.
        """
        self.check_dimension(n)
        name, _, argument = kind.partition(":")
        self.logger.debug("Building %s for n=%d", kind, n)
        if name in SIMPLE_KINDS and not argument:
            base = scd_d0_paren(n) if name.startswith("d0") else scd_d1(n)
            return complement_scd(base) if name.endswith("c") else base
        if name not in PARAMETRIC_KINDS or not argument:
            raise NotFoundError(f"Unknown SCD kind {kind!r}; expected one of {', '.join(SIMPLE_KINDS)} or name:arg")
        if name == "lex":
            return scd_from_lexical(n, parse_index_list(argument))
        index = self._member_index(argument)
        if name == "product":
            if n < 3 or n % 2 == 0:
                raise ValidationError(f"product needs an odd dimension >= 3, got {n}")
            members = list(product_pair(n // 2))
        elif name == "necklace":
            members = self.necklace.lifted(n)
        else:
            members = disjoint_family(n, self._family_necklace(n))
        if index >= len(members):
            raise ValidationError(f"{name} has {len(members)} members for n={n}, no member {index}")
        return members[index]

    def _family_necklace(self, n: int) -> list[ChainDecomposition] | None:
        if n in (5, 7):
            return self.necklace.lifted(n)
        if n % 2 and n >= 13:
            return self.necklace.lifted(7)
        return None

    @staticmethod
    def _member_index(argument: str) -> int:
        if not argument.isdigit():
            raise ValidationError(f"Member index must be a non-negative integer, got {argument!r}")
        return int(argument)

    def verify(self, d: ChainDecomposition, kind: str = "scd") -> VerificationReport:
        return verify_scd(d, subject=f"{kind} of Q_{d.n}")

    def disjointness(self, n: int, kinds: Sequence[str]) -> DisjointnessReport:
        if len(kinds) < 2:
            raise ValidationError("Disjointness needs at least two kinds")
        matrix = disjointness_matrix([self.build(kind, n) for kind in kinds])
        passed = all(matrix[a][b] for a in range(len(kinds)) for b in range(len(kinds)) if a != b)
        return DisjointnessReport(n=n, kinds=list(kinds), matrix=matrix, passed=passed)

    def parse(self, text: str) -> ChainDecomposition:
        d = parse_scd_text(text)
        self.check_dimension(d.n)
        return d
