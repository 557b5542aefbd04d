"""Blockedness of a relator with respect to a spin structure."""

from __future__ import annotations

from functools import lru_cache

from .errors import NotBlocked
from .spin import Decoration, GenericDecoration, as_generic
from .words import Letter, Word, dart_inverse, inverse_word, to_darts


def _pair_blocks(d: GenericDecoration, s: Letter, t: Letter) -> list[int]:
    """Blocks containing the incoming dart of ``s`` and the outgoing dart ``t``."""
    c = d.structure
    x = dart_inverse(s, d.involutions)
    return [i for i in c.blocks_containing(x) if t in c.blocks[i]]


def blocked_failure(r: Word, d: Decoration) -> str | None:
    """Return a witness string if ``r`` is not blocked, else ``None``."""
    return _blocked_failure(tuple(r), as_generic(d))


@lru_cache(maxsize=1 << 16)
def _blocked_failure(r: Word, d: GenericDecoration) -> str | None:
    inv = d.involutions
    c = d.structure
    r = to_darts(r, inv)
    if not r:
        return None
    for v in (r, to_darts(inverse_word(r), inv)):
        m = len(v)
        for i in range(m):
            s, t = v[i - 1], v[i]
            if not _pair_blocks(d, s, t):
                return f"no block contains {dart_inverse(s, inv)} and {t}"
        for i in range(m):
            s, b, t = v[i - 1], v[i], v[(i + 1) % m]
            if len(c.blocks_containing(b)) < 2:
                continue
            if s == b == t and b.gen in inv:
                continue
            if not any(t in c.blocks[d.step(b, j)[0]] for j in _pair_blocks(d, s, b)):
                return f"hinge step {s} {b} {t} is not routed by mu"
    return None


def is_blocked(r: Word, d: Decoration) -> bool:
    return blocked_failure(r, d) is None


def block_chain(r: Word, d: Decoration) -> tuple[int, ...]:
    """Block used at each vertex of ``r``; entry ``i`` sits between ``r[i-1]`` and ``r[i]``.

    Where a pair fits several blocks (a doubled hinge), the block is the one
    carried over from the previous vertex through ``mu``.
    """
    d = as_generic(d)
    inv = d.involutions
    r = to_darts(r, inv)
    failure = blocked_failure(r, d)
    if failure:
        raise NotBlocked(failure)
    m = len(r)
    options = [_pair_blocks(d, r[i - 1], r[i]) for i in range(m)]
    start = next((i for i in range(m) if len(options[i]) == 1), None)
    if start is None:
        # every vertex is ambiguous (e.g. b^2 at a hinge b): pick any consistent cycle
        for first in options[0]:
            chain = [first]
            for i in range(1, m):
                chain.append(d.step(r[i - 1], chain[-1])[0])
            if all(chain[i] in options[i] for i in range(m)):
                return tuple(chain)
        return tuple(o[0] for o in options)
    chain: dict[int, int] = {start: options[start][0]}
    for k in range(1, m):
        i = (start + k) % m
        carried = d.step(r[i - 1], chain[(i - 1) % m])[0]
        chain[i] = carried if carried in options[i] else options[i][0]
    return tuple(chain[i] for i in range(m))
