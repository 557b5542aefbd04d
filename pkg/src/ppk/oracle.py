"""Brute-force crossing oracle.

Builds finite windows of both rays as explicit vertices of the tree, lays
out a complete rotation at every shared vertex from local embedding rules,
and reads off on which sides of ``R`` the path ``L`` attaches.  It shares no
code with the fast path beyond word helpers, and exists to cross-check it.

Local rules at a vertex: the letters of each block form a consecutive arc
in the block's cyclic order (or its reverse); blocks meeting at a hinge
letter hang off that letter, the letter's own edge first.  Across an edge
labelled ``l`` the block holding ``l`` continues as the block given by
``mu`` with its orientation flipped iff ``tau`` is 1, and the blocks around
the edge reappear in reverse order on the far side.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .blocked import blocked_failure
from .crossing import _require_reduced, induces_double_ray, inverse_darts
from .errors import NotBlocked
from .spin import Decoration, GenericDecoration, as_generic
from .words import Letter, Word, dart_inverse, to_darts

Vertex = tuple[Letter, ...]


class _Layout:
    """Embedding data at one tree vertex."""

    def __init__(self, reversed_: dict[int, bool], hanging: dict[Letter, list[int]]) -> None:
        self.reversed = reversed_
        self.hanging = hanging
        self._rotation: list[Letter] | None = None

    def rotation(self, d: GenericDecoration) -> list[Letter]:
        """Clockwise order of all darts, by walking around the embedded block tree."""
        if self._rotation is None:
            self._rotation = self._trace(d)
        return self._rotation

    def _trace(self, d: GenericDecoration) -> list[Letter]:

        def neighbours(node):
            kind, val = node
            if kind == "leaf":
                return [("letter", val)]
            if kind == "letter":
                return [("leaf", val)] + [("block", i) for i in self.hanging[val]]
            ring = list(d.sigma[val].ring)
            if self.reversed[val]:
                ring.reverse()
            return [("letter", x) for x in ring]

        first = min(d.structure.alphabet)
        order = [first]
        came, here = ("leaf", first), ("letter", first)
        while True:
            nbrs = neighbours(here)
            nxt = nbrs[(nbrs.index(came) + 1) % len(nbrs)]
            if nxt[0] == "leaf":
                if nxt[1] == first:
                    return order
                order.append(nxt[1])
                came, here = nxt, ("letter", nxt[1])
            else:
                came, here = here, nxt


class _Oracle:
    def __init__(self, d: GenericDecoration, rng: random.Random | None) -> None:
        self.d = d
        self.inv = d.involutions
        self.rng = rng
        c = d.structure
        self.containing = {x: [i for i, b in enumerate(c.blocks) if x in b] for x in c.alphabet}

    def _free_order(self, blocks: list[int]) -> list[int]:
        blocks = sorted(blocks)
        if self.rng is not None:
            self.rng.shuffle(blocks)
        return blocks

    def _free_bit(self) -> bool:
        return bool(self.rng.getrandbits(1)) if self.rng is not None else False

    def root(self) -> _Layout:
        if self.rng is None and hasattr(self, "_root"):
            return self._root
        k = len(self.d.structure.blocks)
        layout = _Layout(
            {i: self._free_bit() for i in range(k)},
            {x: self._free_order(bs) for x, bs in self.containing.items()},
        )
        if self.rng is None:
            self._root = layout
        return layout

    def across(self, layout: _Layout, label: Letter) -> _Layout:
        """Layout at the far end of the edge leaving along ``label``."""
        d = self.d
        g = label.gen
        if label.sign > 0 or g in self.inv:
            continue_as = {i: d.mu[g][i] for i in self.containing[label]}
            flips = {i: d.tau_of(g, i) for i in self.containing[label]}
        else:
            back = {j: i for i, j in d.mu[g].items()}
            continue_as = {i: back[i] for i in self.containing[label]}
            flips = {i: d.tau_of(g, back[i]) for i in self.containing[label]}
        k = len(d.structure.blocks)
        reversed_ = {i: self._free_bit() for i in range(k)}
        for i, j in continue_as.items():
            reversed_[j] = layout.reversed[i] ^ bool(flips[i])
        hanging = {x: self._free_order(bs) for x, bs in self.containing.items()}
        far = dart_inverse(label, self.inv)
        hanging[far] = [continue_as[i] for i in reversed(layout.hanging[label])]
        return _Layout(reversed_, hanging)


@lru_cache(maxsize=256)
def _canonical_oracle(d: GenericDecoration) -> _Oracle:
    return _Oracle(d, None)


def _step(v: Vertex, x: Letter, inv: frozenset[str]) -> Vertex:
    if v and v[-1] == dart_inverse(x, inv):
        return v[:-1]
    return v + (x,)


@lru_cache(maxsize=4096)
def _window(word: Word, phase: int, radius: int, inv: frozenset[str]):
    """Vertices at offsets ``-radius..radius`` of the ray through the identity."""
    n = len(word)
    verts = {0: ()}
    for k in range(radius):
        verts[k + 1] = _step(verts[k], word[(phase + k) % n], inv)
        verts[-k - 1] = _step(verts[-k], dart_inverse(word[(phase - k - 1) % n], inv), inv)
    return verts


def _contact_crosses(w, i, z, j, radius, oracle: _Oracle) -> bool:
    inv = oracle.inv
    m, n = len(w), len(z)
    r_win = _window(w, i, radius, inv)
    l_win = _window(z, j, radius, inv)
    r_index = {v: k for k, v in r_win.items()}
    shared = [(r_index[v], k) for k, v in l_win.items() if v in r_index]
    if any(abs(a) == radius or abs(b) == radius for a, b in shared):
        return False  # the rays coincide
    on_r = {a for a, _ in shared}
    layouts = {0: oracle.root()}
    for k in range(1, radius):
        if k in on_r:
            layouts[k] = oracle.across(layouts[k - 1], w[(i + k - 1) % m])
        if -k in on_r:
            back = dart_inverse(w[(i - k) % m], inv)
            layouts[-k] = oracle.across(layouts[-k + 1], back)
    sides = set()
    for a, b in shared:
        r_in, r_out = dart_inverse(w[(i + a - 1) % m], inv), w[(i + a) % m]
        l_darts = {dart_inverse(z[(j + b - 1) % n], inv), z[(j + b) % n]}
        rot = layouts[a].rotation(oracle.d)
        pos = {x: t for t, x in enumerate(rot)}
        size = len(rot)
        to_in = (pos[r_in] - pos[r_out]) % size
        for x in l_darts - {r_in, r_out}:
            sides.add((pos[x] - pos[r_out]) % size < to_in)
    return len(sides) == 2


def crossing_oracle(w: Word, z: Word, d: Decoration, *, seed: int | None = None) -> bool:
    """Ground-truth crossing test by explicit construction.

    ``seed`` randomises every placement the local rules leave free; the
    verdict must not depend on it.
    """
    d = as_generic(d)
    inv = d.involutions
    _require_reduced(w)
    _require_reduced(z)
    w, z = to_darts(w, inv), to_darts(z, inv)
    if not induces_double_ray(w, inv) or not induces_double_ray(z, inv):
        return False
    for word in (w, z):
        failure = blocked_failure(word, d)
        if failure:
            raise NotBlocked(failure)
    oracle = _Oracle(d, random.Random(seed)) if seed is not None else _canonical_oracle(d)
    radius = 2 * (len(w) + len(z)) + 2
    for i in range(len(w)):
        for v in (z, inverse_darts(z, inv)):
            for j in range(len(v)):
                if _contact_crosses(w, i, v, j, radius, oracle):
                    return True
    return False
