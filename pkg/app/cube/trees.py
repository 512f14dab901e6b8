"""
Ordered rooted trees and the Catalan bijection with Dyck words.

A Dyck word is read in preorder: 1 descends to the next child, 0 returns to
the parent.
"""

from dataclasses import dataclass

from app.core.exceptions import ValidationError
from app.cube.bitstrings import Vertex, is_balanced


@dataclass(frozen=True, slots=True)
class RootedTree:
    """Rooted tree given by the left-to-right list of its root's subtrees."""

    children: tuple["RootedTree", ...] = ()

    @property
    def edge_count(self) -> int:
        return sum(1 + child.edge_count for child in self.children)

    @property
    def degree(self) -> int:
        return len(self.children)

    def encode(self) -> str:
        return "".join("1" + child.encode() + "0" for child in self.children)

    @classmethod
    def decode(cls, word: str) -> "RootedTree":
        """
        Build the tree of a Dyck word given as text.

        Raises:
            ValidationError: If the word is not balanced.
        """
        if not is_balanced(word):
            raise ValidationError(f"{word!r} is not a Dyck word")
        stack: list[list[RootedTree]] = [[]]
        for symbol in word:
            if symbol == "1":
                stack.append([])
            else:
                done = cls(tuple(stack.pop()))
                stack[-1].append(done)
        return cls(tuple(stack[0]))


def dyck_to_tree(v: Vertex) -> RootedTree:
    return RootedTree.decode(str(v))


def tree_to_dyck(t: RootedTree) -> Vertex:
    return Vertex.from_string(t.encode())
