"""Spin structures and the decorations that turn a presentation into an embedded one.

A spin structure is a list of blocks covering the symmetrized alphabet.  A
generic decoration adds a cyclic order per block (``sigma``), a flip bit per
generator and block (``tau``) and, for every generator, a bijection ``mu``
from the blocks containing it to the blocks containing its inverse.

Conventions used throughout the package:

* ``mu`` is stored on positive generators only; crossing an edge backwards
  (reading ``b^-1``) uses the inverse bijection.
* The flip applied when a walk reads ``b^-1`` out of block ``j`` is
  ``tau[b, i]`` where ``mu[b][i] == j``, i.e. the flip of the same physical
  edge seen from its tail.
* For an involution ``b`` the two ends of an edge carry the same label, so
  ``mu[b]`` must be an involutive permutation with ``tau`` constant on its
  orbits.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidStructure, NoBlock, UnknownLetter
from .presentation import Presentation, involution_set, symmetrized_alphabet
from .words import Letter, letter_key


@dataclass(frozen=True, eq=False)
class CyclicOrder:
    """A circular arrangement of distinct letters, compared up to rotation."""

    ring: tuple[Letter, ...]

    def __post_init__(self) -> None:
        ring = tuple(self.ring)
        if len(set(ring)) != len(ring):
            raise ValueError("cyclic order repeats a letter")
        object.__setattr__(self, "ring", ring)

    @cached_property
    def _canonical(self) -> tuple[Letter, ...]:
        if not self.ring:
            return ()
        start = min(range(len(self.ring)), key=lambda i: letter_key(self.ring[i]))
        return self.ring[start:] + self.ring[:start]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclicOrder):
            return NotImplemented
        return self._canonical == other._canonical

    def __hash__(self) -> int:
        return hash(self._canonical)

    def __len__(self) -> int:
        return len(self.ring)

    def __iter__(self):
        return iter(self.ring)

    def __repr__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.ring) + ")"

    @property
    def support(self) -> frozenset[Letter]:
        return frozenset(self.ring)

    def reflected(self) -> CyclicOrder:
        return CyclicOrder(tuple(reversed(self.ring)))

    def equivalent(self, other: CyclicOrder) -> bool:
        """Equality up to rotation and reflection."""
        return self == other or self == other.reflected()

    @cached_property
    def positions(self) -> dict[Letter, int]:
        return {x: i for i, x in enumerate(self.ring)}


@dataclass(frozen=True, eq=False)
class SpinStructure:
    blocks: tuple[frozenset[Letter], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(frozenset(b) for b in self.blocks))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpinStructure):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __repr__(self) -> str:
        inner = ", ".join("{" + ", ".join(str(x) for x in sorted(b, key=letter_key)) + "}" for b in self.blocks)
        return f"SpinStructure([{inner}])"

    @cached_property
    def alphabet(self) -> frozenset[Letter]:
        return frozenset().union(*self.blocks) if self.blocks else frozenset()

    @cached_property
    def involutions(self) -> frozenset[str]:
        """Generators whose inverse symbol is absent, hence read as involutions."""
        return frozenset(x.gen for x in self.alphabet if x.sign > 0 and Letter(x.gen, -1) not in self.alphabet)

    @cached_property
    def _containing(self) -> dict[Letter, tuple[int, ...]]:
        out: dict[Letter, list[int]] = {}
        for i, b in enumerate(self.blocks):
            for x in b:
                out.setdefault(x, []).append(i)
        return {x: tuple(v) for x, v in out.items()}

    def blocks_containing(self, letter: Letter) -> tuple[int, ...]:
        return self._containing.get(letter, ())

    def inverse_letter(self, letter: Letter) -> Letter:
        if letter.gen in self.involutions:
            return Letter(letter.gen, 1)
        return letter.inverse()


def singleton_structure(alphabet: Iterable[Letter]) -> SpinStructure:
    return SpinStructure((frozenset(alphabet),))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, condition: str, witness: str) -> None:
        self.violations.append((condition, witness))

    def __bool__(self) -> bool:
        return self.ok


def _incidence_is_tree(c: SpinStructure) -> bool:
    letters = sorted(c.alphabet, key=letter_key)
    index = {x: len(c.blocks) + i for i, x in enumerate(letters)}
    n = len(c.blocks) + len(letters)
    edges = sum(len(b) for b in c.blocks)
    if edges != n - 1:
        return False
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, b in enumerate(c.blocks):
        for x in b:
            ra, rb = find(i), find(index[x])
            if ra == rb:
                return False
            parent[ra] = rb
    return True


def _check_structure(c: SpinStructure, report: ValidationReport) -> None:
    if not c.blocks:
        report.add("STRUCT", "no blocks")
        return
    for i, b in enumerate(c.blocks):
        if not b:
            report.add("STRUCT", f"block {i} is empty")
    if len(set(c.blocks)) != len(c.blocks):
        report.add("STRUCT", "repeated block")
    for x in sorted(c.alphabet, key=letter_key):
        if x.sign > 0 and x.gen not in c.involutions:
            here = len(c.blocks_containing(x))
            there = len(c.blocks_containing(x.inverse()))
            if here != there:
                report.add("S1", f"{x} lies in {here} blocks but {x.inverse()} in {there}")
    if not _incidence_is_tree(c):
        report.add("S2", "block-letter incidence graph is not a tree")
    if report.ok:
        for i in range(len(c.blocks)):
            for j in range(i + 1, len(c.blocks)):
                if len(c.blocks[i] & c.blocks[j]) > 1:
                    report.add("FACT1", f"blocks {i} and {j} share more than one letter")
        if len(c.blocks) >= 2:
            for i, b in enumerate(c.blocks):
                if not any(len(c.blocks_containing(x)) >= 2 for x in b):
                    report.add("FACT2", f"block {i} contains no hinge")


def validate_spin_structure(p: Presentation, c: SpinStructure) -> ValidationReport:
    alphabet = frozenset(symmetrized_alphabet(p))
    for b in c.blocks:
        for x in b:
            if x not in alphabet:
                raise UnknownLetter(str(x))
    report = ValidationReport()
    missing = alphabet - c.alphabet
    if missing:
        report.add("COVER", "uncovered: " + ", ".join(str(x) for x in sorted(missing, key=letter_key)))
        return report
    _check_structure(c, report)
    return report


def hinges(c: SpinStructure) -> frozenset[Letter]:
    report = ValidationReport()
    _check_structure(c, report)
    if not report.ok:
        raise InvalidStructure("; ".join(w for _, w in report.violations))
    return frozenset(x for x in c.alphabet if len(c.blocks_containing(x)) >= 2)


@dataclass(frozen=True)
class Ambiguous:
    """Several blocks contain the pair; only arises when ``s^-1 == t``."""

    candidates: tuple[int, ...]


def block_of_adjacent_letters(s: Letter, t: Letter, c: SpinStructure) -> int | Ambiguous:
    """The block holding both ``s^-1`` and ``t`` for a step ``s`` then ``t``."""
    x = c.inverse_letter(s)
    common = tuple(i for i in c.blocks_containing(x) if t in c.blocks[i])
    if not common:
        raise NoBlock(f"no block contains {x} and {t}")
    if x == t and len(common) > 1:
        return Ambiguous(common)
    return common[0]


# ---------------------------------------------------------------------------
# decorations
# ---------------------------------------------------------------------------


def _freeze_tau(tau: Mapping[tuple[str, int], int]) -> dict[tuple[str, int], int]:
    return {(g, int(i)): int(v) for (g, i), v in tau.items()}


def forced_mu(c: SpinStructure, mu: Mapping[str, Mapping[int, int]]) -> dict[str, dict[int, int]]:
    """Complete ``mu`` where it is forced (a single target block for the inverse)."""
    out = {g: dict(m) for g, m in mu.items()}
    for x in c.alphabet:
        if x.sign < 0:
            continue
        sources = c.blocks_containing(x)
        targets = c.blocks_containing(c.inverse_letter(x))
        if len(sources) == 1 and len(targets) == 1:
            out.setdefault(x.gen, {}).setdefault(sources[0], targets[0])
    return out


@dataclass(frozen=True, eq=False)
class GenericDecoration:
    structure: SpinStructure
    sigma: tuple[CyclicOrder, ...]
    tau: Mapping[tuple[str, int], int]
    mu: Mapping[str, Mapping[int, int]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "tau", _freeze_tau(self.tau))
        object.__setattr__(self, "mu", forced_mu(self.structure, self.mu))

    def key(self) -> tuple:
        return self._key

    @cached_property
    def _key(self) -> tuple:
        return (
            self.structure.blocks,
            tuple(s._canonical for s in self.sigma),
            tuple(sorted((k, v) for k, v in self.tau.items() if v)),
            tuple(sorted((g, tuple(sorted(m.items()))) for g, m in self.mu.items())),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GenericDecoration):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    @property
    def involutions(self) -> frozenset[str]:
        return self.structure.involutions

    def tau_of(self, gen: str, block: int) -> int:
        return self.tau.get((gen, block), 0)

    @cached_property
    def _mu_inverse(self) -> dict[str, dict[int, int]]:
        return {g: {j: i for i, j in m.items()} for g, m in self.mu.items()}

    def step(self, letter: Letter, block: int) -> tuple[int, int]:
        """Leave a vertex along ``letter`` from ``block``.

        Returns the block holding the reverse dart at the far end and the
        flip bit of the edge.
        """
        if letter.sign > 0 or letter.gen in self.involutions:
            return self.mu[letter.gen][block], self.tau_of(letter.gen, block)
        source = self._mu_inverse[letter.gen][block]
        return source, self.tau_of(letter.gen, source)

    def reflected(self) -> GenericDecoration:
        return GenericDecoration(self.structure, tuple(s.reflected() for s in self.sigma), self.tau, self.mu)


@dataclass(frozen=True, eq=False)
class SpecialDecoration:
    sigma: CyclicOrder
    tau: Mapping[str, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tau", {g: int(v) for g, v in self.tau.items()})

    def key(self) -> tuple:
        return (self.sigma._canonical, tuple(sorted((g, v) for g, v in self.tau.items() if v)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpecialDecoration):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"SpecialDecoration(sigma={self.sigma!r}, tau={dict(sorted(self.tau.items()))})"

    @cached_property
    def lifted(self) -> GenericDecoration:
        return self.lift()

    def lift(self) -> GenericDecoration:
        """The same decoration seen as a generic one with a single block."""
        structure = singleton_structure(self.sigma.ring)
        gens = sorted({x.gen for x in self.sigma.ring})
        return GenericDecoration(
            structure,
            (self.sigma,),
            {(g, 0): self.tau.get(g, 0) for g in gens},
            {g: {0: 0} for g in gens},
        )

    def reflected(self) -> SpecialDecoration:
        return SpecialDecoration(self.sigma.reflected(), self.tau)


Decoration = GenericDecoration | SpecialDecoration


def as_generic(d: Decoration) -> GenericDecoration:
    return d.lifted if isinstance(d, SpecialDecoration) else d


def validate_decoration(p: Presentation, d: Decoration) -> ValidationReport:
    d = as_generic(d)
    c = d.structure
    report = validate_spin_structure(p, c)
    if not report.ok:
        return report
    inv = involution_set(p)
    k = len(c.blocks)
    if len(d.sigma) != k:
        report.add("DECOR", f"{len(d.sigma)} cyclic orders for {k} blocks")
    for i, (b, s) in enumerate(zip(c.blocks, d.sigma)):
        if s.support != b:
            report.add("DECOR", f"sigma({i}) does not have support equal to block {i}")
    for g in p.generators:
        for i in range(k):
            if (g, i) not in d.tau:
                report.add("DECOR", f"tau({g},{i}) undefined")
            elif d.tau[(g, i)] not in (0, 1):
                report.add("DECOR", f"tau({g},{i}) is not a bit")
    extra = {key for key in d.tau if key[0] not in p.generators or not 0 <= key[1] < k}
    for g, i in sorted(extra):
        report.add("DECOR", f"tau({g},{i}) outside S x blocks")
    for g in p.generators:
        x = Letter(g, 1)
        target = Letter(g, 1) if g in inv else Letter(g, -1)
        sources = c.blocks_containing(x)
        m = d.mu.get(g, {})
        for i in sources:
            if i not in m:
                report.add("DECOR", f"mu({g},{i}) undefined")
            elif not (0 <= m[i] < k) or target not in c.blocks[m[i]]:
                report.add("DECOR", f"mu({g},{i}) = {m[i]} does not contain {target}")
        if set(m) - set(sources):
            report.add("DECOR", f"mu({g},.) defined on blocks without {g}")
        values = [m[i] for i in sources if i in m]
        if len(set(values)) != len(values):
            report.add("DECOR", f"mu({g},.) is not injective")
        if g in inv and report.ok:
            for i in sources:
                if m[m[i]] != i:
                    report.add("DECOR", f"mu({g},.) is not an involution at block {i}")
                elif d.tau_of(g, i) != d.tau_of(g, m[i]):
                    report.add("DECOR", f"tau({g},.) differs across the pairing {i} <-> {m[i]}")
    return report
