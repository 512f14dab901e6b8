"""
Largest known families of pairwise edge-disjoint SCDs of Q_n.
"""

from collections.abc import Sequence

from app.core.exceptions import ValidationError
from app.core.logging import get_logger
from app.cube.necklace import DEFAULT_BUDGET, build_necklace_graph, lift_to_cube, search_disjoint_scds
from app.cube.product import product_scd_family
from app.cube.scd import ChainDecomposition, complement_scd, scd_d0_paren, scd_d1

logger = get_logger(__name__)

# Dimension -> family size reached by lifting necklace SCDs.
NECKLACE_SIZES = {5: 3, 7: 4}


def necklace_family(n: int, budget: int = DEFAULT_BUDGET) -> list[ChainDecomposition]:
    """
    Search the necklace graph and lift the result.

    Raises:
        ValidationError: If ``n`` has no necklace family or the search proves there is none.
        BudgetExceededError: If the search runs out of nodes.
    """
    if n not in NECKLACE_SIZES:
        raise ValidationError(f"No necklace family is known for n={n}")
    found = search_disjoint_scds(build_necklace_graph(n), NECKLACE_SIZES[n], budget)
    if found is None:
        raise ValidationError(f"N_{n} has no {NECKLACE_SIZES[n]} disjoint SCDs")
    return lift_to_cube(found)


def disjoint_family(
    n: int,
    necklace: Sequence[ChainDecomposition] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[ChainDecomposition]:
    """
    Pairwise edge-disjoint SCDs of Q_n.

    Args:
        n: Cube dimension.
        necklace: Lifted necklace SCDs of Q_5 or Q_7, whichever the family is built
            from (Q_7 for odd ``n >= 13``); searched for when omitted.
        budget: Node budget of that search.

    Returns:
        list: One SCD for ``n = 1``, two for odd ``n`` without a better
            construction, three for ``n in {4, 5}`` and four for even ``n >= 6``,
            ``n = 7`` and odd ``n >= 13``.
    """
    if n < 1:
        raise ValidationError(f"Dimension must be positive, got {n}")
    d0 = scd_d0_paren(n)
    if n == 1:
        return [d0]
    if n in NECKLACE_SIZES:
        return list(necklace) if necklace is not None else necklace_family(n, budget)
    if n % 2 == 0 and n >= 4:
        d1 = scd_d1(n)
        family = [d0, complement_scd(d0), d1, complement_scd(d1)]
        return family[:3] if n == 4 else family
    if n % 2 and n >= 13:
        logger.debug("Family for n=%d from n=%d and n=7", n, n - 7)
        return product_scd_family(disjoint_family(n - 7, budget=budget), disjoint_family(7, necklace, budget))
    return [d0, complement_scd(d0)]


def four_disjoint_scds(n: int, necklace: Sequence[ChainDecomposition] | None = None) -> list[ChainDecomposition]:
    """
    Four pairwise edge-disjoint SCDs of Q_n.

    Raises:
        ValidationError: For ``n < 6`` and ``n in {9, 11}``.
    """
    if n < 6 or n in (9, 11):
        raise ValidationError(f"No four edge-disjoint SCDs are known for n={n}")
    return disjoint_family(n, necklace)[:4]
