"""Recognising special and generic planar presentations."""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass, field

from .blocked import block_chain, blocked_failure, is_blocked
from .crossing import find_crossing, induces_double_ray
from .errors import SearchBudgetExceeded
from .presentation import Presentation, symmetrized_alphabet
from .spin import (
    CyclicOrder,
    Decoration,
    GenericDecoration,
    SpecialDecoration,
    as_generic,
    validate_decoration,
)
from .words import (
    Letter,
    Word,
    cyclic_reduce,
    format_word,
    inverse_word,
    is_subword_of_rotation,
    to_darts,
)

__all__ = [
    "Verdict",
    "block_chain",
    "check_generic",
    "check_special",
    "check_special_as_generic_consistency",
    "is_blocked",
    "reversal_parity_even",
    "search_special_decoration",
    "special_candidates",
]


@dataclass
class Verdict:
    failures: list[tuple[str, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return not self.failures

    @property
    def kind(self) -> str:
        return "accepted" if self.accepted else "rejected"

    def conditions(self) -> set[str]:
        return {c for c, _ in self.failures}

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "failures": [{"condition": c, "witness": w} for c, w in self.failures],
            "warnings": list(self.warnings),
        }


def _is_square(r: Word, involutions: frozenset[str]) -> bool:
    return len(r) == 2 and r[0] == r[1] and r[0].gen in involutions


def reversal_parity_even(r: Word, d: Decoration) -> bool:
    """Even number of spin-reversing letters along the cyclic word ``r``.

    Each letter is charged the flip bit of the edge it reads, taken in the
    block it leaves from; squares of involutions are exempt.
    """
    g = as_generic(d)
    r = to_darts(r, g.involutions)
    if not r or _is_square(r, g.involutions):
        return True
    chain = block_chain(r, g)
    return sum(g.step(x, b)[1] for x, b in zip(r, chain)) % 2 == 0


def _reduced(p: Presentation, involutions: frozenset[str], verdict: Verdict) -> Presentation:
    """Relators reduced over the free product; same group, same Cayley graph."""
    out = []
    for i, r in enumerate(p.relators):
        q = r if _is_square(r, involutions) else cyclic_reduce(r, involutions)
        if not r:
            verdict.warnings.append(f"relator {i} is empty")
        elif q != r:
            verdict.warnings.append(f"relator {format_word(r)} is not cyclically reduced; checked as {format_word(q)}")
        if q:
            out.append(q)
    return Presentation(p.generators, tuple(out))


def _ray_relators(p: Presentation, involutions: frozenset[str]) -> list[int]:
    """Indices of relators that induce bi-infinite paths in the tree."""
    return [i for i, r in enumerate(p.relators) if induces_double_ray(r, involutions)]


def _crossing_failures(p, d, indices, condition, verdict, self_crossing, stop_early) -> None:
    for a, i in enumerate(indices):
        for j in indices[a:]:
            if i == j and not self_crossing:
                continue
            if find_crossing(p.relators[i], p.relators[j], d, check_blocked=False) is not None:
                verdict.failures.append(
                    (condition, f"{format_word(p.relators[i])} crosses {format_word(p.relators[j])}")
                )
                if stop_early:
                    return


def check_special(
    p: Presentation,
    d: SpecialDecoration,
    *,
    self_crossing: bool = True,
    stop_early: bool = False,
) -> Verdict:
    verdict = Verdict()
    report = validate_decoration(p, d)
    if not report.ok:
        verdict.failures.extend(("DECOR", w) for _, w in report.violations)
        return verdict
    g = d.lifted
    p = _reduced(p, g.involutions, verdict)
    for r in p.relators:
        if not reversal_parity_even(r, g):
            verdict.failures.append(("sP2", f"{format_word(r)} has an odd number of reversing letters"))
            if stop_early:
                return verdict
    rays = _ray_relators(p, g.involutions)
    _crossing_failures(p, g, rays, "sP1", verdict, self_crossing, stop_early)
    return verdict


def check_generic(
    p: Presentation,
    d: GenericDecoration,
    *,
    self_crossing: bool = True,
    strict_factors: bool = False,
    include_factor_condition: bool = True,
    stop_early: bool = False,
) -> Verdict:
    """Check every generic condition; ``strict_factors`` also forbids factors of inverses."""
    verdict = Verdict()
    report = validate_decoration(p, d)
    if not report.ok:
        for cond, w in report.violations:
            verdict.failures.append((cond if cond in ("S1", "S2") else "DECOR", w))
        return verdict
    d = as_generic(d)
    inv = d.involutions
    if include_factor_condition:
        failure = factor_failure(p, inv, strict=strict_factors)
        if failure:
            verdict.failures.append(("P4", failure))
            if stop_early:
                return verdict
    p = _reduced(p, inv, verdict)
    blocked = []
    for i, r in enumerate(p.relators):
        why = blocked_failure(r, d)
        if why:
            verdict.failures.append(("P1", f"{format_word(r)}: {why}"))
            if stop_early:
                return verdict
        else:
            blocked.append(i)
    for i in blocked:
        r = p.relators[i]
        if not reversal_parity_even(r, d):
            verdict.failures.append(("P3", f"{format_word(r)} has an odd number of reversing letters"))
            if stop_early:
                return verdict
    rays = [i for i in _ray_relators(p, inv) if i in blocked]
    _crossing_failures(p, d, rays, "P2", verdict, self_crossing, stop_early)
    return verdict


def factor_failure(p: Presentation, involutions: frozenset[str], *, strict: bool = False) -> str | None:
    """Witness for a relator occurring inside a rotation of a different relator."""
    words = []
    for r in p.relators:
        r = to_darts(r, involutions)
        if r and r not in words:
            words.append(r)
    for u in words:
        for v in words:
            if u == v:
                continue
            targets = [v, to_darts(inverse_word(v), involutions)] if strict else [v]
            if any(is_subword_of_rotation(u, t) for t in targets):
                return f"{format_word(u)} is a factor of a rotation of {format_word(v)}"
    return None


def check_special_as_generic_consistency(p: Presentation, d: SpecialDecoration) -> bool:
    """Do the special check and the single-block generic check agree?

    The generic check adds a factor condition that has no special
    counterpart, so it is left out of the comparison.
    """
    special = check_special(p, d)
    generic = check_generic(p, d.lift(), include_factor_condition=False)
    return special.accepted == generic.accepted


# ---------------------------------------------------------------------------
# decoration search
# ---------------------------------------------------------------------------


def cyclic_orders(letters: tuple[Letter, ...]) -> Iterator[CyclicOrder]:
    """All cyclic orders of ``letters`` up to rotation and reflection, lexicographically."""
    if len(letters) <= 2:
        yield CyclicOrder(letters)
        return
    first, rest = letters[0], letters[1:]
    index = {x: i for i, x in enumerate(letters)}
    for perm in itertools.permutations(rest):
        if index[perm[0]] < index[perm[-1]]:
            yield CyclicOrder((first,) + perm)


def special_candidates(p: Presentation) -> Iterator[SpecialDecoration]:
    alphabet = symmetrized_alphabet(p)
    for sigma in cyclic_orders(alphabet):
        for bits in itertools.product((0, 1), repeat=len(p.generators)):
            yield SpecialDecoration(sigma, dict(zip(p.generators, bits)))


def search_special_decoration(p: Presentation, *, max_candidates: int | None = None) -> SpecialDecoration | None:
    for tried, d in enumerate(special_candidates(p)):
        if max_candidates is not None and tried >= max_candidates:
            raise SearchBudgetExceeded(tried)
        if check_special(p, d, stop_early=True).accepted:
            return d
    return None
