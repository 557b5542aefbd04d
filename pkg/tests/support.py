"""Shared builders for the test suite."""

from __future__ import annotations

import itertools
import random

from ppk.blocked import is_blocked
from ppk.cayley import ColoredGraph, Edge, build_cayley_graph, coset_enumerate
from ppk.crossing import induces_double_ray
from ppk.enumeration import _mu_choices, _tau_choices
from ppk.presentation import Presentation, parse_presentation, parse_word
from ppk.spin import (
    CyclicOrder,
    GenericDecoration,
    SpecialDecoration,
    SpinStructure,
    validate_spin_structure,
)
from ppk.words import Letter, cyclic_reduce

GRID = "<n,e,s,w | n^2, e^2, s^2, w^2, n e s w>"
PRISM4 = "<a,b | a^4, b^2, a b a^-1 b>"
K5 = "<a,b | a^5, b^5, a^2 b^-1>"
AMALGAM_PRINTED = "<a,b,c | b^2, a^3, c^3, a b a^-1 b, c b c>"
AMALGAM = "<a,b,c | b^2, a^3, c^3, a b a^-1 b, c b c b>"


def W(text: str, p: Presentation | str) -> tuple[Letter, ...]:
    if isinstance(p, str):
        p = parse_presentation(p)
    return parse_word(text, p.generators)


def grid():
    p = parse_presentation(GRID)
    d = SpecialDecoration(CyclicOrder(W("n e s w", p)), {g: 0 for g in "nesw"})
    return p, d


def amalgam(text: str = AMALGAM_PRINTED, **overrides):
    p = parse_presentation(text)
    c = SpinStructure((frozenset(W("b c c^-1", p)), frozenset(W("b a a^-1", p))))
    sigma = (CyclicOrder(W("b c c^-1", p)), CyclicOrder(W("b a^-1 a", p)))
    tau = {(g, i): 0 for g in "abc" for i in (0, 1)}
    tau[("b", 1)] = 1
    tau.update(overrides.get("tau", {}))
    mu = overrides.get("mu", {"b": {0: 0, 1: 1}})
    return p, GenericDecoration(c, sigma, tau, mu)


def cayley(text: str, max_cosets: int = 10_000) -> ColoredGraph:
    p = parse_presentation(text)
    return build_cayley_graph(p, coset_enumerate(p, max_cosets))


def grid_patch(size: int) -> tuple[ColoredGraph, dict[tuple[int, int], int]]:
    """A ``size`` x ``size`` patch of the square grid with e-edges eastward, n-edges northward."""
    index = {(x, y): i for i, (x, y) in enumerate(itertools.product(range(size), repeat=2))}
    edges = []
    for (x, y), v in index.items():
        if x + 1 < size:
            edges.append(Edge(v, index[(x + 1, y)], "e"))
        if y + 1 < size:
            edges.append(Edge(v, index[(x, y + 1)], "n"))
    return ColoredGraph(len(index), edges), index


def glued_blocks(left: int, right: int) -> ColoredGraph:
    """Two cycles of lengths ``left`` and ``right`` sharing one ``b``-coloured edge 0-1."""
    edges = [Edge(0, 1, "b", directed=False)]
    n = 2
    for length in (left, right):
        path = [1] + list(range(n, n + length - 2)) + [0]
        n += length - 2
        edges += [Edge(u, v, "a") for u, v in itertools.pairwise(path)]
    return ColoredGraph(n, edges)


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def alphabet(gens: str, involutions: str) -> tuple[Letter, ...]:
    return tuple(Letter(g, 1) for g in gens) + tuple(Letter(g, -1) for g in gens if g not in involutions)


def random_structure(rng: random.Random, letters: tuple[Letter, ...], max_blocks: int = 3) -> SpinStructure:
    """Grow a block tree: each new block hangs off an old one through a shared letter."""
    gens = sorted({x.gen for x in letters})
    involutions = "".join(g for g in gens if Letter(g, -1) not in letters)
    p = Presentation(tuple(gens), tuple((Letter(g, 1), Letter(g, 1)) for g in involutions))
    while True:
        k = rng.randint(1, min(max_blocks, len(letters)))
        shuffled = list(letters)
        rng.shuffle(shuffled)
        cuts = sorted(rng.sample(range(1, len(letters)), k - 1))
        blocks = [set(shuffled[a:b]) for a, b in zip([0] + cuts, cuts + [len(letters)])]
        for i in range(1, k):
            host = blocks[rng.randrange(i)]
            blocks[i].add(rng.choice(sorted(host)))
        c = SpinStructure(tuple(frozenset(b) for b in blocks))
        if validate_spin_structure(p, c).ok:
            return c


def random_generic(rng: random.Random, gens: str, involutions: str, max_blocks: int = 3) -> GenericDecoration:
    c = random_structure(rng, alphabet(gens, involutions), max_blocks)
    sigma = []
    for b in c.blocks:
        ring = sorted(b)
        rng.shuffle(ring)
        sigma.append(CyclicOrder(tuple(ring)))
    mu = rng.choice(list(_mu_choices(c)))
    tau = rng.choice(list(_tau_choices(c, mu, tuple(gens))))
    return GenericDecoration(c, tuple(sigma), tau, mu)


def random_special(rng: random.Random, gens: str, involutions: str) -> SpecialDecoration:
    ring = list(alphabet(gens, involutions))
    rng.shuffle(ring)
    return SpecialDecoration(CyclicOrder(tuple(ring)), {g: rng.randint(0, 1) for g in gens})


def random_word(rng: random.Random, letters: tuple[Letter, ...], max_len: int) -> tuple[Letter, ...]:
    return tuple(rng.choice(letters) for _ in range(rng.randint(1, max_len)))


def random_ray_word(rng, d, max_len: int, tries: int = 2000):
    """A free-cyclically-reduced word inducing a double ray and blocked for ``d``, or ``None``."""
    letters = tuple(sorted(d.structure.alphabet))
    for _ in range(tries):
        w = random_word(rng, letters, max_len)
        if len(cyclic_reduce(w)) == len(w) and induces_double_ray(w, d.involutions) and is_blocked(w, d):
            return w
    return None


def reduced_words(letters, max_len: int):
    for n in range(1, max_len + 1):
        for w in itertools.product(letters, repeat=n):
            if len(cyclic_reduce(w)) == n:
                yield w


def special_decorations(gens: str, involutions: str):
    letters = alphabet(gens, involutions)
    first, rest = letters[0], letters[1:]
    for perm in itertools.permutations(rest):
        if len(perm) >= 2 and perm[0] > perm[-1]:
            continue
        sigma = CyclicOrder((first,) + perm)
        for bits in itertools.product((0, 1), repeat=len(gens)):
            yield SpecialDecoration(sigma, dict(zip(gens, bits)))
