"""Group presentations: parsing, formatting, and Tietze moves."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    DuplicateGenerator,
    PresentationError,
    PresentationSyntaxError,
    UnknownGenerator,
)
from .words import Letter, Word, format_word, free_product_reduce

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9]*")


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        seen: set[str] = set()
        for g in self.generators:
            if not _IDENT.fullmatch(g):
                raise PresentationError(f"invalid generator name {g!r}")
            if g in seen:
                raise DuplicateGenerator(g)
            seen.add(g)
        for r in self.relators:
            for x in r:
                if x.gen not in seen:
                    raise UnknownGenerator(x.gen)
                if x.sign not in (1, -1):
                    raise PresentationError(f"bad sign in letter {x!r}")

    def __str__(self) -> str:
        return format_presentation(self)


def format_presentation(p: Presentation) -> str:
    gens = ", ".join(p.generators)
    rels = ", ".join(format_word(r) for r in p.relators)
    return f"< {gens} | {rels} >" if rels else f"< {gens} | >"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, generators: tuple[str, ...] | None = None) -> None:
        self.text = text
        self.pos = 0
        self.generators = generators
        self.compact = False

    def error(self, message: str):
        raise PresentationSyntaxError(message, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def ident(self) -> str:
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.error("expected identifier")
        self.pos = m.end()
        return m.group()

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"[+-]?\s*\d+").match(self.text, self.pos)
        if not m:
            self.error("expected integer")
        self.pos = m.end()
        return int(m.group().replace(" ", ""))

    def exponent(self) -> int:
        if self.peek() == "^":
            self.pos += 1
            return self.integer()
        return 1

    def presentation(self) -> Presentation:
        self.expect("<")
        gens = [self.ident()]
        while self.peek() == ",":
            self.pos += 1
            gens.append(self.ident())
        if len(set(gens)) != len(gens):
            dup = next(g for g in gens if gens.count(g) > 1)
            raise DuplicateGenerator(dup)
        self.generators = tuple(gens)
        self.compact = all(len(g) == 1 for g in gens)
        self.expect("|")
        relators: list[Word] = []
        if self.peek() != ">":
            relators.append(self.word())
            while self.peek() == ",":
                self.pos += 1
                relators.append(self.word())
        self.expect(">")
        if self.peek():
            self.error("trailing input")
        return Presentation(self.generators, tuple(relators))

    def word(self) -> Word:
        letters: list[Letter] = []
        terms = 0
        while self.peek() not in ("", ",", ">", ")"):
            letters.extend(self.term())
            terms += 1
        if not terms:
            self.error("expected word")
        return tuple(letters)

    def term(self) -> list[Letter]:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            body = self.word()
            self.expect(")")
            return _power(list(body), self.exponent())
        if ch == "1":
            self.pos += 1
            self.exponent()
            return []
        if not (ch.isascii() and ch.isalpha()):
            self.error(f"unexpected character {ch!r}")
        if self.compact:
            name = self.text[self.pos]
            self.pos += 1
        else:
            name = self.ident()
        if self.generators is not None and name not in self.generators:
            raise UnknownGenerator(name)
        return _power([Letter(name, 1)], self.exponent())


def _power(body: list[Letter], n: int) -> list[Letter]:
    if n < 0:
        body = [x.inverse() for x in reversed(body)]
    return body * abs(n)


def parse_presentation(text: str) -> Presentation:
    """Parse ``< gens | relators >``; exponents are expanded into letters.

    Beyond the basic grammar, ``1`` denotes the empty word and parenthesised
    groups may carry an exponent, e.g. ``(a f)^2``.
    """
    return _Parser(text).presentation()


def parse_word(text: str, generators: tuple[str, ...] | list[str]) -> Word:
    parser = _Parser(text, tuple(generators))
    parser.compact = all(len(g) == 1 for g in generators)
    w = parser.word()
    if parser.peek():
        parser.error("trailing input")
    return w


# ---------------------------------------------------------------------------
# derived alphabets
# ---------------------------------------------------------------------------


def involution_set(p: Presentation) -> frozenset[str]:
    """Generators with an explicit relator ``s^2`` or ``s^-2`` (after free reduction)."""
    found = set()
    for r in p.relators:
        r = free_product_reduce(r)
        if len(r) == 2 and r[0] == r[1]:
            found.add(r[0].gen)
    return frozenset(found)


def symmetrized_alphabet(p: Presentation) -> tuple[Letter, ...]:
    inv = involution_set(p)
    return tuple(Letter(g, 1) for g in p.generators) + tuple(Letter(g, -1) for g in p.generators if g not in inv)


# ---------------------------------------------------------------------------
# Tietze moves
# ---------------------------------------------------------------------------


def tietze_add_product_generator(p: Presentation, u: Letter, v: Letter, name: str) -> Presentation:
    """Add a generator ``name`` standing for ``u v`` via the relator ``name^-1 u v``."""
    if name in p.generators:
        raise DuplicateGenerator(name)
    for x in (u, v):
        if x.gen not in p.generators:
            raise UnknownGenerator(x.gen)
    relator = (Letter(name, -1), u, v)
    return Presentation(p.generators + (name,), p.relators + (relator,))


def obviously_redundant(p: Presentation) -> list[tuple[str, int]]:
    """Pairs ``(s, index)`` where ``s`` occurs exactly once overall, in relator ``index``."""
    found = []
    for g in p.generators:
        hits = [(i, sum(x.gen == g for x in r)) for i, r in enumerate(p.relators)]
        hits = [(i, c) for i, c in hits if c]
        if len(hits) == 1 and hits[0][1] == 1:
            found.append((g, hits[0][0]))
    return found


def remove_generator(p: Presentation, gen: str, relator_index: int) -> Presentation:
    gens = tuple(g for g in p.generators if g != gen)
    rels = tuple(r for i, r in enumerate(p.relators) if i != relator_index)
    return Presentation(gens, rels)


def remove_obviously_redundant(p: Presentation) -> list[Presentation]:
    """One presentation per obviously redundant generator, with it and its relator dropped."""
    out: list[Presentation] = []
    for g, i in obviously_redundant(p):
        q = remove_generator(p, g, i)
        if q not in out:
            out.append(q)
    return out
