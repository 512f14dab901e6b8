"""
General utility functions shared by the library and the CLI.
"""

from collections.abc import Mapping
from math import comb, isqrt

from app.core.exceptions import ValidationError


def is_prime(n: int) -> bool:
    """
    Trial-division primality test.

    Args:
        n: Number to test.

    Returns:
        bool: True if ``n`` is prime.
    """
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def band_size(dimension: int, lo: int, hi: int) -> int:
    """Number of vertices of Q_dimension with weight in ``[lo, hi]``."""
    return sum(comb(dimension, k) for k in range(max(lo, 0), min(hi, dimension) + 1))


def parse_index_list(text: str) -> tuple[int, ...]:
    """
    Parse a comma separated list of non-negative integers such as ``1,0,2``.

    Raises:
        ValidationError: If an entry is not a non-negative integer.
    """
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token.isdigit():
            raise ValidationError(f"Not a non-negative integer: {token!r}")
        values.append(int(token))
    return tuple(values)


def format_histogram(histogram: Mapping[int, int]) -> str:
    """Render ``{length: count}`` as ``length x count`` pairs, shortest first."""
    return ", ".join(f"{length}x{count}" for length, count in sorted(histogram.items()))
