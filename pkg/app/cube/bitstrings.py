"""
Bitstrings as hypercube vertices and lattice paths.

A vertex of the n-cube is stored as an ``int`` whose most significant of the
``n`` bits is position 1, so the canonical text form reads left to right and
integer order equals lexicographic order among strings of equal length.
``Vertex`` pairs that integer with its length for the public API; the bulk
constructions elsewhere in ``app.cube`` work on bare ints plus a dimension.

Reading a bitstring as a lattice path, a 1 is an up-step and a 0 is a
down-step. The Dyck classes below refer to the heights of that path.
"""

from dataclasses import dataclass
from enum import StrEnum
from itertools import combinations

from app.core.exceptions import ValidationError

MAX_LENGTH = 127


class DyckClass(StrEnum):
    """Position of a lattice path relative to the abscissa."""

    STRICTLY_POSITIVE = "strictly-positive"
    TOUCHES_ZERO = "touches-zero"
    BELOW_ONCE = "below-once"
    OTHER = "other"


@dataclass(frozen=True, slots=True, order=True)
class Vertex:
    """
    Fixed-length bitstring.

    Ordering compares length first, then the bits, which is lexicographic
    order for vertices of the same length.
    """

    length: int
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.length <= MAX_LENGTH:
            raise ValidationError(f"Vertex length must be in [0, {MAX_LENGTH}], got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValidationError(f"Bits {self.bits} do not fit into length {self.length}")

    @classmethod
    def from_string(cls, text: str) -> "Vertex":
        """Parse the canonical '0'/'1' text form."""
        return cls(len(text), to_bits(text))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def __str__(self) -> str:
        return to_text(self.bits, self.length)


def to_bits(text: str) -> int:
    """
    Convert a '0'/'1' string to its integer encoding.

    Raises:
        ValidationError: If the string holds other symbols.
    """
    if text.strip("01"):
        raise ValidationError(f"Not a bitstring: {text!r}")
    return int(text, 2) if text else 0


def to_text(bits: int, length: int) -> str:
    """Render an integer-encoded vertex, position 1 first."""
    return format(bits, f"0{length}b") if length else ""


def flip(bits: int, length: int, position: int) -> int:
    """Flip the bit at 1-based ``position``."""
    return bits ^ (1 << (length - position))


def flip_position(a: int, b: int, length: int) -> int:
    """1-based position in which two neighbouring vertices differ."""
    return length - (a ^ b).bit_length() + 1


def complement_bits(bits: int, length: int) -> int:
    return bits ^ ((1 << length) - 1)


def reverse_bits(bits: int, length: int) -> int:
    return int(to_text(bits, length)[::-1] or "0", 2)


def comp_rev_bits(bits: int, length: int) -> int:
    return reverse_bits(complement_bits(bits, length), length)


def weight(v: Vertex) -> int:
    """Number of 1-bits."""
    return v.weight


def complement(v: Vertex) -> Vertex:
    return Vertex(v.length, complement_bits(v.bits, v.length))


def reverse(v: Vertex) -> Vertex:
    return Vertex(v.length, reverse_bits(v.bits, v.length))


def comp_rev(v: Vertex) -> Vertex:
    """The automorphism that flips all bits and reverses them."""
    return Vertex(v.length, comp_rev_bits(v.bits, v.length))


def level(length: int, k: int) -> list[int]:
    """All vertices of weight ``k`` in increasing (lexicographic) order."""
    if not 0 <= k <= length:
        return []
    shifts = [length - p for p in range(1, length + 1)]
    return sorted(sum(1 << shifts[p] for p in chosen) for chosen in combinations(range(length), k))


def band(length: int, lo: int, hi: int) -> list[int]:
    """All vertices whose weight lies in ``[lo, hi]``, in increasing order."""
    return sorted(x for k in range(max(lo, 0), min(hi, length) + 1) for x in level(length, k))


def heights(word: str) -> list[int]:
    """Path heights after each prefix, starting with 0 for the empty prefix."""
    result = [0]
    for symbol in word:
        result.append(result[-1] + (1 if symbol == "1" else -1))
    return result


def classify_word(word: str) -> DyckClass:
    """Dyck class of a '0'/'1' string."""
    height = 0
    below = 0
    touches = False
    for symbol in word:
        height += 1 if symbol == "1" else -1
        if height < 0:
            below += 1
        elif height == 0:
            touches = True
    if below == 0:
        return DyckClass.TOUCHES_ZERO if touches else DyckClass.STRICTLY_POSITIVE
    if below == 1:
        return DyckClass.BELOW_ONCE
    return DyckClass.OTHER


def classify_dyck(v: Vertex) -> DyckClass:
    """
    Classify a vertex by the prefix condition of its lattice path.

    The empty bitstring is strictly positive.
    """
    return classify_word(str(v))


def in_dyck(word: str) -> bool:
    """True if every prefix holds at least as many 1s as 0s."""
    return classify_word(word) in (DyckClass.STRICTLY_POSITIVE, DyckClass.TOUCHES_ZERO)


def is_balanced(word: str) -> bool:
    """True for Dyck words: in ``in_dyck`` and ending at height 0."""
    return in_dyck(word) and 2 * word.count("1") == len(word)


def first_return(word: str) -> int:
    """Index just after the first return of the path to height 0, or -1."""
    height = 0
    for index, symbol in enumerate(word):
        height += 1 if symbol == "1" else -1
        if height == 0:
            return index + 1
    return -1


def split_first_return(word: str) -> tuple[str, str]:
    """
    Write a word touching zero as ``1 u 0 w`` with ``u`` balanced.

    Raises:
        ValidationError: If the word has no first return starting with an up-step.
    """
    end = first_return(word)
    if end < 2 or word[0] != "1" or not in_dyck(word[:end]):
        raise ValidationError(f"{word!r} does not decompose as (1,u,0,w)")
    return word[1 : end - 1], word[end:]


def split_last_block(word: str) -> tuple[str, str]:
    """
    Write a word ending at height 1 above its start as ``s 1 v`` with ``v``
    balanced, splitting at the last up-step leaving height 0.
    """
    levels = heights(word)
    last_zero = max(i for i, h in enumerate(levels) if h == 0)
    if last_zero == len(word) or word[last_zero] != "1":
        raise ValidationError(f"{word!r} does not decompose as (s,1,v)")
    return word[:last_zero], word[last_zero + 1 :]


def canonical_decompose(v: Vertex) -> tuple[Vertex, Vertex]:
    """
    Canonical decomposition ``v = (1, u, 0, w)`` of a word in D^{=0}.

    Returns:
        tuple: ``(u, w)`` where ``u`` is the balanced part before the first return.

    Raises:
        ValidationError: If ``v`` does not touch zero.
    """
    if classify_dyck(v) is not DyckClass.TOUCHES_ZERO:
        raise ValidationError(f"{v} is not in D^=0")
    u, w = split_first_return(str(v))
    return Vertex.from_string(u), Vertex.from_string(w)


def dyck_words(length: int, weight_: int | None = None) -> list[str]:
    """All words of the given length in D, optionally with a fixed weight."""
    max_ones = length if weight_ is None else weight_
    max_zeros = length if weight_ is None else length - weight_
    words = [("", 0)]
    for step in range(length):
        grown = []
        for word, ones in words:
            zeros = step - ones
            if ones < max_ones:
                grown.append((word + "1", ones + 1))
            if zeros < min(ones, max_zeros):
                grown.append((word + "0", ones))
        words = grown
    return sorted(word for word, _ in words)
