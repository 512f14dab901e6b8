"""
Product construction for symmetric chain decompositions.

A vertex of Q_{a+b} is the concatenation of a vertex of Q_a (leftmost) and a
vertex of Q_b. For chains ``A = (x_1..x_alpha)`` of Q_a and ``B = (y_1..y_beta)``
of Q_b the grid ``A x B`` is cut into ``min(alpha, beta)`` symmetric chains. Two
cutting rules are supported: the first walks along the Q_a coordinate and
then the Q_b coordinate, the last does it the other way round.
"""

from collections.abc import Sequence
from enum import StrEnum
from functools import lru_cache

from app.core.exceptions import ValidationError
from app.core.logging import get_logger
from app.cube.scd import ChainDecomposition, complement_scd, scd_d0_paren, verify_scd

logger = get_logger(__name__)


class ProductRule(StrEnum):
    """How a chain grid is cut into symmetric chains."""

    FIRST_COORDINATE = "first-coordinate"
    LAST_COORDINATE = "last-coordinate"


def grid_chains(a: Sequence[int], b: Sequence[int], b_length: int, rule: ProductRule) -> list[list[int]]:
    """
    Cut the grid of two chains into ``min(len(a), len(b))`` chains.

    Args:
        a: Chain of Q_a, lowest vertex first.
        b: Chain of Q_b, lowest vertex first.
        b_length: Dimension of the cube of ``b``.
        rule: Cutting rule.

    Returns:
        list: Chains of Q_{a+b} covering every grid vertex exactly once.
    """
    alpha, beta = len(a), len(b)

    def pair(x: int, y: int) -> int:
        return (x << b_length) | y

    chains = []
    for j in range(min(alpha, beta)):
        if rule is ProductRule.FIRST_COORDINATE:
            corner = a[alpha - j - 1]
            chain = [pair(x, b[j]) for x in a[: alpha - j]]
            chain += [pair(corner, y) for y in b[j + 1 :]]
        else:
            corner = b[beta - j - 1]
            chain = [pair(a[j], y) for y in b[: beta - j]]
            chain += [pair(x, corner) for x in a[j + 1 :]]
        chains.append(chain)
    return chains


def _require_scd(d: ChainDecomposition, name: str) -> None:
    report = verify_scd(d, subject=name)
    if not report.passed:
        failed = next(check for check in report.checks if not check.passed)
        raise ValidationError(f"{name} is not an SCD: {failed.name} ({failed.witness})")


def product_scd(
    d_a: ChainDecomposition,
    d_b: ChainDecomposition,
    rule: ProductRule = ProductRule.FIRST_COORDINATE,
    check_inputs: bool = True,
) -> ChainDecomposition:
    """
    SCD of Q_{a+b} built grid by grid from SCDs of Q_a and Q_b.

    Raises:
        ValidationError: If ``check_inputs`` is set and an input is not an SCD.
    """
    if check_inputs:
        _require_scd(d_a, "left factor")
        _require_scd(d_b, "right factor")
    paths = []
    right = d_b.sorted_chains()
    for chain_a in d_a.sorted_chains():
        for chain_b in right:
            paths.extend(grid_chains(chain_a.vertices, chain_b.vertices, d_b.n, rule))
    return ChainDecomposition.from_paths(d_a.n + d_b.n, paths)


def product_scd_family(
    d_as: Sequence[ChainDecomposition],
    d_bs: Sequence[ChainDecomposition],
    rule: ProductRule = ProductRule.FIRST_COORDINATE,
) -> list[ChainDecomposition]:
    """
    Combine ``k`` SCDs of Q_a with ``k`` SCDs of Q_b index by index.

    Pairwise edge-disjoint inputs give pairwise edge-disjoint outputs.

    Raises:
        ValidationError: If the families differ in size.
    """
    if len(d_as) != len(d_bs):
        raise ValidationError(f"Family sizes differ: {len(d_as)} vs {len(d_bs)}")
    logger.debug("Product of two families of size %d", len(d_as))
    return [product_scd(d_a, d_b, rule) for d_a, d_b in zip(d_as, d_bs)]


def product_power(
    head: ChainDecomposition,
    factor: ChainDecomposition,
    copies: int,
    rule: ProductRule = ProductRule.FIRST_COORDINATE,
) -> ChainDecomposition:
    """``head x factor x ... x factor`` with ``copies`` factors, associated left to right."""
    result = head
    for _ in range(copies):
        result = product_scd(result, factor, rule, check_inputs=False)
    return result


def unit_scd() -> ChainDecomposition:
    """The only SCD of Q_1."""
    return ChainDecomposition.from_paths(1, [[0, 1]])


@lru_cache(maxsize=32)
def scd_d0_product(n: int) -> ChainDecomposition:
    """D0 of Q_n as the iterated product ``Q_1 x Q_1 x ... x Q_1`` under the first-coordinate rule."""
    if n < 1:
        raise ValidationError(f"Dimension must be positive, got {n}")
    return product_power(unit_scd(), unit_scd(), n - 1)


def product_pair(n: int) -> tuple[ChainDecomposition, ChainDecomposition]:
    """
    Two edge-disjoint SCDs of Q_{2n+1} from D0 of Q_3 and ``n-1`` copies of D0 of Q_2.

    The second is the product of the complemented inputs under the same
    first-coordinate rule; for ``n >= 2`` it is not the complement of the first.
    """
    if n < 1:
        raise ValidationError(f"Half-dimension must be positive, got {n}")
    d = product_power(scd_d0_paren(3), scd_d0_paren(2), n - 1, ProductRule.FIRST_COORDINATE)
    d_prime = product_power(
        complement_scd(scd_d0_paren(3)),
        complement_scd(scd_d0_paren(2)),
        n - 1,
        ProductRule.FIRST_COORDINATE,
    )
    return d, d_prime
