"""Effective enumeration of presentations, decorations and planar presentations.

Presentations are handled internally as tuples of integer codes: generator
``k`` is ``2k`` and its inverse ``2k + 1``.  A canonical presentation is the
least encoding over all renamings and per-generator inversions, with every
relator cyclically reduced and rotated to its least shift.
"""

from __future__ import annotations

import itertools
import string
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cache

from .blocked import blocked_failure
from .conditions import (
    check_generic,
    check_special,
    cyclic_orders,
    factor_failure,
    reversal_parity_even,
    special_candidates,
)
from .presentation import (
    Presentation,
    involution_set,
    obviously_redundant,
    remove_generator,
    symmetrized_alphabet,
)
from .spin import (
    CyclicOrder,
    GenericDecoration,
    SpecialDecoration,
    SpinStructure,
    validate_spin_structure,
)
from .words import Letter, to_darts

Code = tuple[int, ...]


@dataclass(frozen=True)
class Budget:
    max_generators: int
    max_relators: int
    max_total_length: int
    max_outputs: int | None = None

    def __post_init__(self) -> None:
        for name in ("max_generators", "max_relators", "max_total_length"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    def admits(self, p: Presentation) -> bool:
        return (
            len(p.generators) <= self.max_generators
            and len(p.relators) <= self.max_relators
            and sum(map(len, p.relators)) <= self.max_total_length
        )


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------


def generator_names(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"x{i}" for i in range(n))


def _least_rotation(code: Code) -> Code:
    return min(code[i:] + code[:i] for i in range(len(code))) if code else code


def _free_cyclic_reduce(code: Code) -> Code:
    stack: list[int] = []
    for c in code:
        if stack and stack[-1] ^ 1 == c:
            stack.pop()
        else:
            stack.append(c)
    lo, hi = 0, len(stack)
    while hi - lo >= 2 and stack[lo] ^ 1 == stack[hi - 1]:
        lo += 1
        hi -= 1
    return tuple(stack[lo:hi])


def _encoding(relators: Iterable[Code]) -> tuple[Code, ...]:
    """Sorted shortlex list of least rotations, empty and repeated relators dropped."""
    rels = {_least_rotation(r) for r in relators if r}
    return tuple(sorted(rels, key=lambda r: (len(r), r)))


@cache
def _signed_relabelings(n: int) -> list[tuple[int, ...]]:
    """Maps on letter codes induced by permuting and inverting generators."""
    maps = []
    for perm in itertools.permutations(range(n)):
        for flips in itertools.product((0, 1), repeat=n):
            table = [0] * (2 * n)
            for k in range(n):
                table[2 * k] = 2 * perm[k] + flips[k]
                table[2 * k + 1] = 2 * perm[k] + (1 - flips[k])
            maps.append(tuple(table))
    return maps


def _canonical_codes(n: int, relators: Iterable[Code]) -> tuple[Code, ...]:
    rels = [_free_cyclic_reduce(r) for r in relators]
    rels = [r for r in rels if r]
    return min(
        (_encoding(tuple(table[c] for c in r) for r in rels) for table in _signed_relabelings(n)),
        key=lambda enc: [(len(r), r) for r in enc],
    )


def _to_codes(p: Presentation) -> list[Code]:
    index = {g: k for k, g in enumerate(p.generators)}
    return [tuple(2 * index[x.gen] + (x.sign < 0) for x in r) for r in p.relators]


def _from_codes(n: int, relators: Iterable[Code]) -> Presentation:
    names = generator_names(n)
    return Presentation(names, tuple(tuple(Letter(names[c >> 1], -1 if c & 1 else 1) for c in r) for r in relators))


def canonical_form(p: Presentation) -> Presentation:
    """Canonical representative up to renaming, inverting generators, relator order and rotation."""
    n = len(p.generators)
    return _from_codes(n, _canonical_codes(n, _to_codes(p)))


def encoding_key(p: Presentation) -> tuple:
    """Sort key giving the enumeration order (generators, total length, encoding)."""
    codes = _to_codes(p)
    return (len(p.generators), sum(map(len, codes)), [(len(r), r) for r in codes])


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------


@cache
def _necklaces(n: int, length: int) -> tuple[Code, ...]:
    """Cyclically reduced codes of the given length that are their own least rotation."""
    out = []
    for code in itertools.product(range(2 * n), repeat=length):
        if _free_cyclic_reduce(code) == code and _least_rotation(code) == code:
            out.append(code)
    return tuple(out)


def _partitions(total: int, parts: int, smallest: int = 1) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    if parts == 0:
        return
    for first in range(smallest, total + 1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


@cache
def _leading_necklaces(n: int, length: int) -> tuple[Code, ...]:
    """Necklaces no relabeling can make smaller: the only possible first relators."""
    return tuple(
        w
        for w in _necklaces(n, length)
        if all(_least_rotation(tuple(t[c] for c in w)) >= w for t in _signed_relabelings(n))
    )


def _relator_sets(n: int, lengths: tuple[int, ...]) -> Iterator[tuple[Code, ...]]:
    """Strictly increasing (shortlex) choices of necklaces with the given lengths."""

    def extend(i: int, prev: Code | None) -> Iterator[tuple[Code, ...]]:
        if i == len(lengths):
            yield ()
            return
        for w in (_leading_necklaces if i == 0 else _necklaces)(n, lengths[i]):
            if prev is not None and len(prev) == len(w) and w <= prev:
                continue
            for rest in extend(i + 1, w):
                yield (w,) + rest

    yield from extend(0, None)


def _is_canonical(n: int, rels: tuple[Code, ...]) -> bool:
    """``rels`` (reduced least rotations in shortlex order) is minimal under every relabeling."""
    if not rels:
        return True
    key = [(len(r), r) for r in rels]
    first = rels[0]
    shortest = [r for r in rels if len(r) == len(first)]
    for table in _signed_relabelings(n):
        # only relabelings that tie on the first relator can win
        head = min(_least_rotation(tuple(table[c] for c in r)) for r in shortest)
        if head > first:
            continue
        if head < first:
            return False
        if [(len(r), r) for r in _encoding(tuple(table[c] for c in r) for r in rels)] < key:
            return False
    return True


def _canonical_level(n: int, total: int, max_relators: int) -> list[tuple[Code, ...]]:
    found = []
    for lengths in _partitions(total, max_relators):
        for rels in _relator_sets(n, lengths):
            if _is_canonical(n, rels):
                found.append(rels)
    found.sort(key=lambda enc: [(len(r), r) for r in enc])
    return found


def enumerate_presentations(budget: Budget) -> Iterator[Presentation]:
    """Every canonical presentation within ``budget``, once, in diagonal order."""
    emitted = 0
    for n in range(1, budget.max_generators + 1):
        for total in range(budget.max_total_length + 1):
            for rels in _canonical_level(n, total, budget.max_relators):
                if budget.max_outputs is not None and emitted >= budget.max_outputs:
                    return
                emitted += 1
                yield _from_codes(n, rels)


def is_emitted_by(p: Presentation, budget: Budget) -> bool:
    """Would ``enumerate_presentations(budget)`` emit ``p`` (ignoring ``max_outputs``)?"""
    return 1 <= len(p.generators) and budget.admits(p) and canonical_form(p) == p


# ---------------------------------------------------------------------------
# spin structures and decorations
# ---------------------------------------------------------------------------


def enumerate_spin_structures(alphabet: tuple[Letter, ...]) -> Iterator[SpinStructure]:
    """All covers of ``alphabet`` by distinct blocks whose incidence graph is a tree and
    which balance every letter against its inverse."""
    n = len(alphabet)
    index = {x: i for i, x in enumerate(alphabet)}
    masks = list(range(1, 1 << n))
    involutions = {x.gen for x in alphabet if Letter(x.gen, -1) not in index}

    def balanced(chosen: list[int]) -> bool:
        for x in alphabet:
            if x.sign > 0 and x.gen not in involutions:
                i, j = index[x], index[x.inverse()]
                if sum(m >> i & 1 for m in chosen) != sum(m >> j & 1 for m in chosen):
                    return False
        return True

    def search(start: int, comp: tuple[int, ...], chosen: list[int]) -> Iterator[list[int]]:
        covered = chosen and all(any(m >> i & 1 for m in chosen) for i in range(n))
        if covered and len(set(comp)) == 1 and balanced(chosen):
            yield list(chosen)
        for k in range(start, len(masks)):
            mask = masks[k]
            members = [i for i in range(n) if mask >> i & 1]
            roots = {comp[i] for i in members}
            if len(roots) != len(members):
                continue  # two letters already joined: a cycle
            merged = min(roots)
            new_comp = tuple(merged if c in roots else c for c in comp)
            chosen.append(mask)
            yield from search(k + 1, new_comp, chosen)
            chosen.pop()

    for chosen in search(0, tuple(range(n)), []):
        yield SpinStructure(tuple(frozenset(alphabet[i] for i in range(n) if m >> i & 1) for m in chosen))


def _mu_choices(c: SpinStructure) -> Iterator[dict[str, dict[int, int]]]:
    involutions = c.involutions
    per_gen = []
    for g in sorted({x.gen for x in c.alphabet}):
        sources = c.blocks_containing(Letter(g, 1))
        if g in involutions:
            options = [dict(pairs) for pairs in _involutive_permutations(sources)]
        else:
            targets = c.blocks_containing(Letter(g, -1))
            options = [dict(zip(sources, perm)) for perm in itertools.permutations(targets)]
        per_gen.append([(g, m) for m in options])
    for combo in itertools.product(*per_gen):
        yield dict(combo)


def _involutive_permutations(items: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for rest_pairs in _involutive_permutations(rest):
        yield [(first, first)] + rest_pairs
    for k, other in enumerate(rest):
        remaining = rest[:k] + rest[k + 1 :]
        for rest_pairs in _involutive_permutations(remaining):
            yield [(first, other), (other, first)] + rest_pairs


def _tau_choices(c: SpinStructure, mu: dict[str, dict[int, int]], generators: tuple[str, ...]) -> Iterator[dict]:
    """Flip bits on (generator, block) pairs that are ever read; all others are 0."""
    groups: list[list[tuple[str, int]]] = []
    for g in generators:
        seen: set[int] = set()
        for i in c.blocks_containing(Letter(g, 1)):
            if i in seen:
                continue
            orbit = [i]
            if g in c.involutions and mu[g][i] != i:
                orbit.append(mu[g][i])
            seen.update(orbit)
            groups.append([(g, j) for j in orbit])
    base = {(g, i): 0 for g in generators for i in range(len(c.blocks))}
    for bits in itertools.product((0, 1), repeat=len(groups)):
        tau = dict(base)
        for bit, group in zip(bits, groups):
            for key in group:
                tau[key] = bit
        yield tau


def _sigma_choices(c: SpinStructure, alphabet: tuple[Letter, ...]) -> Iterator[tuple[CyclicOrder, ...]]:
    order = {x: i for i, x in enumerate(alphabet)}
    per_block = [list(cyclic_orders(tuple(sorted(b, key=order.__getitem__)))) for b in c.blocks]
    yield from itertools.product(*per_block)


def enumerate_decorations(p: Presentation, kind: str) -> Iterator[SpecialDecoration | GenericDecoration]:
    if kind == "special":
        yield from special_candidates(p)
        return
    if kind != "generic":
        raise ValueError(f"unknown decoration kind {kind!r}")
    alphabet = symmetrized_alphabet(p)
    for c in enumerate_spin_structures(alphabet):
        for mu in _mu_choices(c):
            for tau in _tau_choices(c, mu, p.generators):
                for sigma in _sigma_choices(c, alphabet):
                    yield GenericDecoration(c, sigma, tau, mu)


# ---------------------------------------------------------------------------
# planar presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarItem:
    presentation: Presentation
    decoration: SpecialDecoration | GenericDecoration
    parent: Presentation | None = None
    removed: tuple[str, ...] = field(default=())


def _special_planar(p: Presentation) -> Iterator[SpecialDecoration]:
    alphabet = symmetrized_alphabet(p)
    sigmas = list(cyclic_orders(alphabet))
    for bits in itertools.product((0, 1), repeat=len(p.generators)):
        tau = dict(zip(p.generators, bits))
        probe = SpecialDecoration(sigmas[0], tau)
        if not all(reversal_parity_even(r, probe) for r in p.relators):
            continue  # parity does not depend on sigma
        for sigma in sigmas:
            d = SpecialDecoration(sigma, tau)
            if check_special(p, d, stop_early=True).accepted:
                yield d


def _pairs_fit(c: SpinStructure, p: Presentation) -> bool:
    """Clause (a) of blockedness only involves the blocks, so test it per structure."""
    inv = c.involutions
    for r in p.relators:
        r = to_darts(r, inv)
        for word in (r, tuple(c.inverse_letter(x) for x in reversed(r))):
            for i in range(len(word)):
                s, t = word[i - 1], word[i]
                x = c.inverse_letter(s)
                if not any(t in c.blocks[j] for j in c.blocks_containing(x)):
                    return False
    return True


def _generic_planar(p: Presentation) -> Iterator[GenericDecoration]:
    inv = involution_set(p)
    if factor_failure(p, inv):
        return
    alphabet = symmetrized_alphabet(p)
    for c in enumerate_spin_structures(alphabet):
        if not validate_spin_structure(p, c).ok or not _pairs_fit(c, p):
            continue
        sigmas = list(_sigma_choices(c, alphabet))
        for mu in _mu_choices(c):
            zero = {(g, i): 0 for g in p.generators for i in range(len(c.blocks))}
            probe = GenericDecoration(c, sigmas[0], zero, mu)
            if any(blocked_failure(r, probe) for r in p.relators):
                continue
            for tau in _tau_choices(c, mu, p.generators):
                probe = GenericDecoration(c, sigmas[0], tau, mu)
                if not all(reversal_parity_even(r, probe) for r in p.relators):
                    continue
                for sigma in sigmas:
                    d = GenericDecoration(c, sigma, tau, mu)
                    if check_generic(p, d, stop_early=True).accepted:
                        yield d


def planar_decorations(p: Presentation, kind: str) -> Iterator[SpecialDecoration | GenericDecoration]:
    """Decorations of ``p`` accepted by the checker of the given kind."""
    if kind == "special":
        return _special_planar(p)
    if kind == "generic":
        return _generic_planar(p)
    raise ValueError(f"unknown decoration kind {kind!r}")


def _descendants(p: Presentation) -> Iterator[tuple[Presentation, tuple[str, ...]]]:
    """Presentations reached by removing obviously redundant generators one at a time."""
    frontier = [(p, ())]
    seen = {p}
    while frontier:
        q, chain = frontier.pop(0)
        for g, i in obviously_redundant(q):
            child = remove_generator(q, g, i)
            if child in seen:
                continue
            seen.add(child)
            yield child, chain + (g,)
            frontier.append((child, chain + (g,)))


def enumerate_planar(
    kind: str,
    budget: Budget,
    *,
    source: Iterable[Presentation] | None = None,
) -> Iterator[PlanarItem]:
    """Stream planar presentations with their accepting decorations.

    ``source`` replaces the canonical enumeration by an explicit list of
    presentations (each canonicalised and filtered by the budget).
    """
    if kind not in ("special", "generic", "general"):
        raise ValueError(f"unknown kind {kind!r}")
    if source is None:
        presentations: Iterable[Presentation] = enumerate_presentations(
            Budget(budget.max_generators, budget.max_relators, budget.max_total_length)
        )
    else:
        presentations = (q for q in map(canonical_form, source) if budget.admits(q))
    check_kind = "special" if kind == "special" else "generic"
    emitted = 0
    descendants_seen: set[Presentation] = set()
    for p in presentations:
        for d in planar_decorations(p, check_kind):
            items = [PlanarItem(p, d)]
            if kind == "general":
                for child, chain in _descendants(p):
                    canon = canonical_form(child)
                    if canon not in descendants_seen:
                        descendants_seen.add(canon)
                        items.append(PlanarItem(canon, d, parent=p, removed=chain))
            for item in items:
                if budget.max_outputs is not None and emitted >= budget.max_outputs:
                    return
                emitted += 1
                yield item
