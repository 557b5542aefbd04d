"""Letters and words over a generating set, with tree-aware reduction.

A word is a plain tuple of :class:`Letter`.  Reduction happens in the free
product of copies of Z (for ordinary generators) and Z/2 (for generators in
the involution set), which is the group whose Cayley graph is the tree all
crossing questions are asked in.
"""

from __future__ import annotations

from collections.abc import Iterable
from typing import NamedTuple


class Letter(NamedTuple):
    gen: str
    sign: int = 1

    def inverse(self) -> Letter:
        return Letter(self.gen, -self.sign)

    def __str__(self) -> str:
        return self.gen if self.sign > 0 else f"{self.gen}^-1"


Word = tuple[Letter, ...]


def letter_key(letter: Letter) -> tuple[str, int]:
    """Total order on letters: by name, positive before inverse."""
    return (letter.gen, 0 if letter.sign > 0 else 1)


def inverse_word(w: Iterable[Letter]) -> Word:
    return tuple(x.inverse() for x in reversed(tuple(w)))


def dart(letter: Letter, involutions: frozenset[str]) -> Letter:
    """The tree-dart label of ``letter``: ``s^-1`` and ``s`` agree for involutions."""
    if letter.sign < 0 and letter.gen in involutions:
        return Letter(letter.gen, 1)
    return letter


def dart_inverse(letter: Letter, involutions: frozenset[str]) -> Letter:
    """Label of the opposite end of an edge labelled ``letter`` at its tail."""
    if letter.gen in involutions:
        return Letter(letter.gen, 1)
    return Letter(letter.gen, -letter.sign)


def to_darts(w: Iterable[Letter], involutions: frozenset[str]) -> Word:
    return tuple(dart(x, involutions) for x in w)


def _cancels(x: Letter, y: Letter, involutions: frozenset[str]) -> bool:
    if x.gen != y.gen:
        return False
    return x.gen in involutions or x.sign != y.sign


def free_product_reduce(w: Iterable[Letter], involutions: frozenset[str] = frozenset()) -> Word:
    """Freely reduce ``w``, also cancelling ``ss`` pairs for involutions.

    Involution letters are normalised to their positive form, so the result
    is the unique reduced spelling of the element.
    """
    stack: list[Letter] = []
    for x in w:
        x = dart(x, involutions)
        if stack and _cancels(stack[-1], x, involutions):
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def cyclic_reduce(w: Iterable[Letter], involutions: frozenset[str] = frozenset()) -> Word:
    r = free_product_reduce(w, involutions)
    lo, hi = 0, len(r)
    while hi - lo >= 2 and _cancels(r[lo], r[hi - 1], involutions):
        lo += 1
        hi -= 1
    return r[lo:hi]


def is_cyclically_reduced(w: Word, involutions: frozenset[str] = frozenset()) -> bool:
    return len(cyclic_reduce(w, involutions)) == len(w)


def rotations(w: Word) -> set[Word]:
    if not w:
        return {()}
    return {w[i:] + w[:i] for i in range(len(w))}


def is_subword_of_rotation(w: Word, r: Word) -> bool:
    """True iff ``w`` is a contiguous factor of some cyclic shift of ``r``."""
    if not w:
        return True
    n, m = len(r), len(w)
    if m > n:
        return False
    doubled = r + r
    return any(doubled[i : i + m] == w for i in range(n))


def least_rotation(w: Word, key=letter_key) -> Word:
    if not w:
        return w
    return min((w[i:] + w[:i] for i in range(len(w))), key=lambda v: [key(x) for x in v])


def format_word(w: Word) -> str:
    return " ".join(str(x) for x in w) if w else "1"
