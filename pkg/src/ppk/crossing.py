"""Crossing of relator words in the embedded tree.

Two cyclic words ``W`` and ``Z`` cross when some bi-infinite path read off
``Z^oo`` meets both sides of some bi-infinite path read off ``W^oo``.  The
paths live in the Cayley tree of the free product of ``Z`` (ordinary
generators) and ``Z/2`` (involutions), embedded locally by a decoration.

Two paths in a tree meet in a (possibly empty) segment.  So every contact
is either a single shared vertex or a maximal shared segment, and the
question is local: compare the side on which ``L`` arrives with the side on
which it leaves, transporting handedness along the segment with the flip
bits of the edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blocked import blocked_failure
from .errors import NotBlocked, NotReduced
from .spin import CyclicOrder, Decoration, GenericDecoration, as_generic
from .words import Letter, Word, dart_inverse, free_product_reduce, to_darts


@dataclass(frozen=True)
class Alignment:
    """Where two rays touch: ``s U t`` on ``W^oo`` against ``s' U t'`` on ``Z^oo``.

    ``chain`` lists the block used at each vertex of the shared segment.
    """

    shared: Word
    w_branch_in: Letter
    w_branch_out: Letter
    z_branch_in: Letter
    z_branch_out: Letter
    w_offset: int
    z_offset: int
    z_direction: str
    chain: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "shared": [str(x) for x in self.shared],
            "w_branch_in": str(self.w_branch_in),
            "w_branch_out": str(self.w_branch_out),
            "z_branch_in": str(self.z_branch_in),
            "z_branch_out": str(self.z_branch_out),
            "w_offset": self.w_offset,
            "z_offset": self.z_offset,
            "z_direction": self.z_direction,
            "chain": list(self.chain),
        }


def induces_double_ray(w: Word, involutions: frozenset[str]) -> bool:
    """True iff ``w^oo`` never backtracks in the tree."""
    w = to_darts(w, involutions)
    if not w:
        return False
    return len(free_product_reduce(w + w, involutions)) == 2 * len(w)


def _require_reduced(w: Word) -> None:
    if len(w) >= 2 and len(free_product_reduce(w + w)) < 2 * len(w):
        raise NotReduced(f"{' '.join(str(x) for x in w)} is not cyclically reduced")


def inverse_darts(w: Word, involutions: frozenset[str]) -> Word:
    return tuple(dart_inverse(x, involutions) for x in reversed(w))


def vertex_blocks(w: Word, d: GenericDecoration) -> tuple[int, ...]:
    """For a reduced blocked dart word, the unique block at each vertex."""
    c = d.structure
    out = []
    for i in range(len(w)):
        x = dart_inverse(w[i - 1], d.involutions)
        out.append(next(j for j in c.blocks_containing(x) if w[i] in c.blocks[j]))
    return tuple(out)


def on_right(incoming: Letter, outgoing: Letter, other: Letter, order: CyclicOrder, reversed_: bool) -> bool:
    """Is ``other`` met strictly between ``outgoing`` and ``incoming`` going clockwise?

    Clockwise is the ring order of ``order`` unless ``reversed_``.
    """
    pos = order.positions
    n = len(order)
    sign = -1 if reversed_ else 1
    to_other = sign * (pos[other] - pos[outgoing]) % n
    to_in = sign * (pos[incoming] - pos[outgoing]) % n
    return to_other < to_in


def interleaved(p: Letter, q: Letter, x: Letter, y: Letter, order: CyclicOrder) -> bool:
    """Do the chords ``p q`` and ``x y`` of the ring cross?"""
    pos = order.positions
    n = len(order)
    a, b = pos[p], pos[q]
    inside = lambda z: 0 < (pos[z] - a) % n < (b - a) % n
    return inside(x) != inside(y)


def find_crossing(w: Word, z: Word, d: Decoration, *, check_blocked: bool = True) -> Alignment | None:
    """Return an alignment witnessing that ``w`` and ``z`` cross, or ``None``."""
    d = as_generic(d)
    inv = d.involutions
    _require_reduced(w)
    _require_reduced(z)
    w, z = to_darts(w, inv), to_darts(z, inv)
    if not induces_double_ray(w, inv) or not induces_double_ray(z, inv):
        return None
    if check_blocked:
        for word in (w, z):
            failure = blocked_failure(word, d)
            if failure:
                raise NotBlocked(failure)
    m, n = len(w), len(z)
    cap = m + n
    w_blocks = vertex_blocks(w, d)
    for direction, v in (("forward", z), ("inverted", inverse_darts(z, inv))):
        v_blocks = vertex_blocks(v, d)
        seen: set[tuple[int, int]] = set()
        for i in range(m):
            for j in range(n):
                back = 0
                while back < cap and w[(i - 1 - back) % m] == v[(j - 1 - back) % n]:
                    back += 1
                fwd = 0
                while back + fwd < cap and w[(i + fwd) % m] == v[(j + fwd) % n]:
                    fwd += 1
                if back + fwd >= cap:
                    continue
                a, b = (i - back) % m, (j - back) % n
                if (a, b) in seen:
                    continue
                seen.add((a, b))
                found = _classify(w, v, a, b, back + fwd, w_blocks, v_blocks, d)
                if found is not None:
                    chain, length = found
                    return Alignment(
                        shared=tuple(w[(a + k) % m] for k in range(length)),
                        w_branch_in=w[a - 1],
                        w_branch_out=w[(a + length) % m],
                        z_branch_in=v[b - 1],
                        z_branch_out=v[(b + length) % n],
                        w_offset=a,
                        z_offset=b,
                        z_direction=direction,
                        chain=chain,
                    )
    return None


def _classify(w, v, a, b, length, w_blocks, v_blocks, d: GenericDecoration):
    """Decide one contact class; return ``(chain, length)`` when it is a crossing."""
    inv = d.involutions
    m, n = len(w), len(v)
    p, q = dart_inverse(w[a - 1], inv), w[a]
    x = dart_inverse(v[b - 1], inv)
    block = w_blocks[a]
    if length == 0:
        y = v[b]
        if {p, q} & {x, y}:
            # the two paths share an edge here; that contact is seen from the other direction
            return None
        if v_blocks[b] != block:
            return None
        if interleaved(p, q, x, y, d.sigma[block]):
            return (block,), 0
        return None
    if v_blocks[b] != block:
        # a one-edge segment whose ends sit in different blocks for the two words
        return None
    start_side = on_right(p, q, x, d.sigma[block], False)
    chain = [block]
    flipped = False
    for k in range(length):
        block, flip = d.step(w[(a + k) % m], block)
        flipped ^= bool(flip)
        chain.append(block)
    e = (a + length) % m
    end_in, end_out = dart_inverse(w[e - 1], inv), w[e]
    y = v[(b + length) % n]
    end_side = on_right(end_in, end_out, y, d.sigma[block], flipped)
    if start_side != end_side:
        return tuple(chain), length
    return None


def decide_crossing(w: Word, z: Word, d: Decoration, *, check_blocked: bool = True) -> bool:
    return find_crossing(w, z, d, check_blocked=check_blocked) is not None
