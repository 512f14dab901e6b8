"""
Tree moves on ``T_{n+1}``: rooted trees with ``n+1`` edges whose root has at
least two children, written as Dyck words of length ``2n+2``.

A tree word splits as ``(1, u, 0, s, 1, v3, 0)``: ``u`` is the leftmost
subtree, ``v3`` the rightmost and ``s`` everything in between. A tree is
left-light when ``u`` is empty and left-heavy otherwise; right-light and
right-heavy refer to ``v3`` in the same way.

``rho`` applies a heavy rotation to left-heavy trees and a light rotation to
left-light ones. Pulls move a leaf from a vertex of the leftmost subtree up to
that vertex's parent. Plane trivalent trees are given by their root's three
binary subtrees; a binary tree is ``()`` for a leaf or ``(left, right)``.
"""

from collections.abc import Iterable
from dataclasses import dataclass
from enum import StrEnum
from functools import lru_cache

from networkx.utils import UnionFind

from app.core.exceptions import ValidationError, VerificationError
from app.cube.bitstrings import (
    DyckClass,
    classify_word,
    dyck_words,
    first_return,
    heights,
    is_balanced,
    split_first_return,
    split_last_block,
)
from app.cube.trees import RootedTree

BinaryTree = tuple
TrivalentTree = tuple[BinaryTree, BinaryTree, BinaryTree]


class MoveKind(StrEnum):
    HEAVY = "heavy"
    LIGHT = "light"
    INVERSE_HEAVY = "inverse-heavy"
    INVERSE_LIGHT = "inverse-light"
    PULL = "pull"
    INVERSE_PULL = "inverse-pull"


@dataclass(frozen=True)
class Move:
    """A tree move; pulls carry the index of the rewritten three-letter window."""

    kind: MoveKind
    index: int | None = None

    def __str__(self) -> str:
        return self.kind if self.index is None else f"{self.kind}@{self.index}"


def in_t(word: str) -> bool:
    """True for Dyck words with at least two root children."""
    return len(word) >= 4 and is_balanced(word) and first_return(word) < len(word)


def _require_t(word: str) -> None:
    if not in_t(word):
        raise ValidationError(f"{word!r} is not a tree with root degree at least two")


def _last_block(word: str) -> tuple[str, str]:
    """``word = (a, 1, b, 0)`` with ``a`` and ``b`` balanced."""
    return split_last_block(word[:-1])


def root_split(word: str) -> tuple[str, str, str]:
    """
    Split a tree word into ``(u, s, v3)``.

    Raises:
        ValidationError: If the word is not in ``T``.
    """
    _require_t(word)
    u, rest = split_first_return(word)
    s, v3 = _last_block(rest)
    return u, s, v3


def is_left_heavy(word: str) -> bool:
    return root_split(word)[0] != ""


def is_right_heavy(word: str) -> bool:
    return root_split(word)[2] != ""


def heavy_rotation(word: str) -> str:
    """
    Left-rotate the tree and right-rotate the middle part ``s``.

    Raises:
        ValidationError: If the tree is left-light.
    """
    u, s, v3 = root_split(word)
    if not u:
        raise ValidationError(f"{word} is left-light")
    if not s:
        return u + "11" + v3 + "00"
    v1, v2 = _last_block(s)
    return u + "11" + v1 + "0" + v2 + "1" + v3 + "00"


def light_rotation(word: str) -> str:
    """
    Right-rotate the tree and ``s`` and move the leftmost leaf to the far right.

    Raises:
        ValidationError: If the tree is left-heavy.
    """
    u, s, v3 = root_split(word)
    if u:
        raise ValidationError(f"{word} is left-heavy")
    if not s:
        return "10" + v3 + "10"
    v1, v2 = _last_block(s)
    return "11" + v1 + "0" + v2 + "0" + v3 + "10"


def inverse_heavy_rotation(word: str) -> str:
    """
    Undo ``heavy_rotation``.

    Raises:
        ValidationError: If the tree is right-light.
    """
    _require_t(word)
    u, b = _last_block(word)
    if not b:
        raise ValidationError(f"{word} is right-light")
    if first_return(b) == len(b):
        return "1" + u + "01" + b[1:-1] + "0"
    v1, rest = split_first_return(b)
    v2, v3 = _last_block(rest)
    return "1" + u + "0" + v1 + "1" + v2 + "01" + v3 + "0"


def inverse_light_rotation(word: str) -> str:
    """
    Undo ``light_rotation``.

    Raises:
        ValidationError: If the tree is right-heavy.
    """
    _require_t(word)
    z, b = _last_block(word)
    if b:
        raise ValidationError(f"{word} is right-heavy")
    c, v3 = split_first_return(z)
    if not c:
        return "101" + v3 + "0"
    v1, v2 = split_first_return(c)
    return "10" + v1 + "1" + v2 + "01" + v3 + "0"


def rho_word(word: str) -> str:
    """Heavy rotation for left-heavy trees, light rotation otherwise."""
    return heavy_rotation(word) if is_left_heavy(word) else light_rotation(word)


def rho_inverse_word(word: str) -> str:
    return inverse_heavy_rotation(word) if is_right_heavy(word) else inverse_light_rotation(word)


def rho(t: RootedTree) -> RootedTree:
    """
    Raises:
        ValidationError: If ``t`` is not in ``T``.
    """
    return RootedTree.decode(rho_word(t.encode()))


def rho_inverse(t: RootedTree) -> RootedTree:
    return RootedTree.decode(rho_inverse_word(t.encode()))


def _window_ok(word: str, index: int, pattern: str) -> bool:
    if word[index : index + 3] != pattern:
        return False
    levels = heights(word)
    if any(h < 1 for h in levels[1 : index + 1]):
        return False
    return any(levels[j] == 0 for j in range(index + 4, len(word)))


def can_pull(word: str, index: int) -> bool:
    """True if ``110`` at ``index`` is a leaf under a vertex of the leftmost subtree."""
    return 0 <= index and _window_ok(word, index, "110")


def can_inverse_pull(word: str, index: int) -> bool:
    return 0 <= index and _window_ok(word, index, "101")


def pull(word: str, index: int) -> str:
    """
    Move the leftmost leaf of the vertex entered at ``index`` to that vertex's parent.

    Raises:
        ValidationError: If no such leaf exists at ``index``.
    """
    if not can_pull(word, index):
        raise ValidationError(f"No pull at {index} in {word}")
    return word[:index] + "101" + word[index + 3 :]


def inverse_pull(word: str, index: int) -> str:
    """
    Move the leaf at ``index`` down to become the leftmost child of its right sibling.

    Raises:
        ValidationError: If no such leaf exists at ``index``.
    """
    if not can_inverse_pull(word, index):
        raise ValidationError(f"No inverse pull at {index} in {word}")
    return word[:index] + "110" + word[index + 3 :]


def pull_positions(word: str) -> list[int]:
    return [i for i in range(len(word) - 2) if can_pull(word, i)]


def inverse_pull_positions(word: str) -> list[int]:
    return [i for i in range(len(word) - 2) if can_inverse_pull(word, i)]


def apply_move(word: str, move: Move) -> str:
    match move.kind:
        case MoveKind.HEAVY:
            return heavy_rotation(word)
        case MoveKind.LIGHT:
            return light_rotation(word)
        case MoveKind.INVERSE_HEAVY:
            return inverse_heavy_rotation(word)
        case MoveKind.INVERSE_LIGHT:
            return inverse_light_rotation(word)
        case MoveKind.PULL:
            return pull(word, move.index if move.index is not None else -1)
        case MoveKind.INVERSE_PULL:
            return inverse_pull(word, move.index if move.index is not None else -1)
    raise ValidationError(f"Unknown move {move}")


def apply_moves(word: str, moves: Iterable[Move]) -> str:
    for move in moves:
        word = apply_move(word, move)
    return word


def star_tree(n: int) -> str:
    """Root of degree two: a star with ``n-1`` leaves on the left, a leaf on the right."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    return "1" + "10" * (n - 1) + "0" + "10"


def normalize_to_star(word: str) -> list[Move]:
    """
    Moves that turn ``word`` into ``star_tree(n)``.

    Left-light, right-heavy trees first take an inverse heavy rotation. A
    left-heavy tree then has its leftmost subtree flattened into a star by
    pulls and stretched into a path by inverse pulls; heavy rotations shorten
    the path until the tree is left-light with a root of degree two, and a
    light rotation follows. From a left-light and right-light tree a light
    rotation and pulls towards the root's left child finish the job.
    """
    _require_t(word)
    star = star_tree(len(word) // 2 - 1)
    if word == star:
        return []
    moves: list[Move] = []
    current = word

    def play(move: Move) -> None:
        nonlocal current
        current = apply_move(current, move)
        moves.append(move)

    def rightmost(positions: list[int]) -> int | None:
        inner = [i for i in positions if i >= 1]
        return inner[-1] if inner else None

    if not is_left_heavy(current) and is_right_heavy(current):
        play(Move(MoveKind.INVERSE_HEAVY))
    if is_left_heavy(current):
        while (index := rightmost(pull_positions(current))) is not None:
            play(Move(MoveKind.PULL, index))
        while (index := rightmost(inverse_pull_positions(current))) is not None:
            play(Move(MoveKind.INVERSE_PULL, index))
        while is_left_heavy(current):
            play(Move(MoveKind.HEAVY))
        play(Move(MoveKind.LIGHT))
    if current != star:
        play(Move(MoveKind.LIGHT))
        while (index := rightmost(pull_positions(current))) is not None:
            play(Move(MoveKind.PULL, index))
    if current != star:
        raise VerificationError(f"Normalisation of {word} stopped at {current}")
    return moves


@lru_cache(maxsize=16)
def tree_words(n: int) -> tuple[str, ...]:
    """All words of ``T_{n+1}`` in increasing order."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    return tuple(
        x + "0" for x in dyck_words(2 * n + 1, n + 1) if classify_word(x) is DyckClass.TOUCHES_ZERO
    )


def rho_orbits(n: int) -> list[list[str]]:
    """Orbits of ``rho`` on ``T_{n+1}``, each sorted, ordered by smallest member."""
    words = tree_words(n)
    forest = UnionFind(words)
    for word in words:
        forest.union(word, rho_word(word))
    return sorted(sorted(orbit) for orbit in forest.to_sets())


def _left_tree(word: str) -> BinaryTree:
    if not word:
        return ()
    u, v = split_first_return(word)
    return (_left_tree(u), _right_tree(v))


def _right_tree(word: str) -> BinaryTree:
    if not word:
        return ()
    u, v = _last_block(word)
    return (_left_tree(u), _right_tree(v))


def tau(word: str) -> TrivalentTree:
    """
    Plane trivalent tree of a word ``(1, u, 0, v, 1, w, 0)`` of ``T``, rooted at an internal vertex.

    Raises:
        ValidationError: If the word is not in ``T``.
    """
    _require_t(word)
    u, rest = split_first_return(word)
    v, w = _last_block(rest)
    return (_left_tree(u), _right_tree(v), _right_tree(w))


def _to_graph(tree: TrivalentTree) -> list[list[int]]:
    """Adjacency in cyclic order: the root lists its three children, other vertices start with the parent."""
    adjacency: list[list[int]] = [[]]

    def attach(subtree: BinaryTree, parent: int) -> int:
        vertex = len(adjacency)
        adjacency.append([parent])
        for child in subtree:
            adjacency[vertex].append(attach(child, vertex))
        return vertex

    for child in tree:
        adjacency[0].append(attach(child, 0))
    return adjacency


def canonical_plane_form(tree: TrivalentTree) -> str:
    """Smallest serialisation over all internal roots and all three starting neighbours."""
    adjacency = _to_graph(tree)

    def serialise(vertex: int, parent: int) -> str:
        neighbours = adjacency[vertex]
        if len(neighbours) == 1:
            return "0"
        start = neighbours.index(parent)
        ordered = neighbours[start + 1 :] + neighbours[:start]
        return "1" + "".join(serialise(child, vertex) for child in ordered)

    forms = []
    for root, neighbours in enumerate(adjacency):
        if len(neighbours) != 3:
            continue
        for start in range(3):
            ordered = neighbours[start:] + neighbours[:start]
            forms.append("1" + "".join(serialise(child, root) for child in ordered))
    return min(forms)


@lru_cache(maxsize=None)
def binary_trees(internal: int) -> tuple[BinaryTree, ...]:
    """All binary trees with the given number of internal vertices."""
    if internal == 0:
        return ((),)
    return tuple(
        (left, right)
        for size in range(internal)
        for left in binary_trees(size)
        for right in binary_trees(internal - 1 - size)
    )


def plane_trivalent_tree_count(n: int) -> int:
    """
    Number of plane trivalent trees with ``n`` internal vertices.

    Every such tree rooted at an internal vertex with a chosen first neighbour
    is a triple of binary trees; the count is the number of distinct canonical forms.
    """
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    forms = set()
    for a in range(n):
        for b in range(n - a):
            c = n - 1 - a - b
            for first in binary_trees(a):
                for second in binary_trees(b):
                    for third in binary_trees(c):
                        forms.add(canonical_plane_form((first, second, third)))
    return len(forms)
