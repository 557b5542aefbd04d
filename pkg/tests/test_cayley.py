import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics.coset_table import coset_enumeration_r
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from ppk.cayley import (
    CosetTable,
    Edge,
    abelianization_is_infinite,
    ball,
    build_cayley_graph,
    color_isomorphic,
    coset_enumerate,
    cycle_space_dimension,
    relator_span_rank,
    relator_walk_vector,
)
from ppk.errors import BudgetExceeded, IncompleteTable
from ppk.presentation import Presentation, involution_set, parse_presentation
from ppk.words import Letter

from support import PRISM4, cayley


def sympy_order(p):
    F, *gens = free_group(",".join(p.generators))
    lookup = dict(zip(p.generators, gens))
    rels = []
    for r in p.relators:
        w = F.identity
        for x in r:
            w = w * lookup[x.gen] ** x.sign
        rels.append(w)
    table = coset_enumeration_r(FpGroup(F, rels), [], max_cosets=20_000)
    table.compress()
    return len(table.table)


ANCHORS = [
    ("<a,b | a^2, b^3, a b^-1>", 1),
    (PRISM4, 8),
    ("<a | a^5>", 5),
    ("<a,b | a^2, b^2, (a b)^3>", 6),
    ("<a,b | a^3, b^2, (a b)^4>", 24),
    ("<a,b | a^2, b^3, (a b)^5>", 60),
    ("<a | a>", 1),
]


@pytest.mark.parametrize("text, order", ANCHORS)
def test_coset_counts(text, order):
    p = parse_presentation(text)
    table = coset_enumerate(p)
    assert table.status == "complete"
    assert len(table) == order == sympy_order(p)


def test_table_is_a_permutation_action():
    p = parse_presentation("<a,b | a^3, b^2, (a b)^4>")
    t = coset_enumerate(p)
    for k in range(len(p.generators)):
        forward = [row[2 * k] for row in t.rows]
        assert sorted(forward) == list(range(len(t)))
        for c, row in enumerate(t.rows):
            assert t.rows[row[2 * k]][2 * k + 1] == c
    for c in range(len(t)):
        for r in p.relators:
            assert t.act(c, r) == c


def test_budget_exceeded_keeps_partial_table():
    p = parse_presentation("<a,b | a b a^-1 b^-1>")
    with pytest.raises(BudgetExceeded) as info:
        coset_enumerate(p, 50)
    partial = info.value.table
    assert isinstance(partial, CosetTable) and partial.status == "incomplete"
    with pytest.raises(IncompleteTable):
        build_cayley_graph(p, partial)


def test_abelianization_shortcut():
    assert abelianization_is_infinite(parse_presentation("<a,b | a b a^-1 b^-1>"))
    assert abelianization_is_infinite(parse_presentation("<a | >"))
    assert not abelianization_is_infinite(parse_presentation(PRISM4))
    assert not abelianization_is_infinite(parse_presentation("<a,b | a^2, b^3, (a b)^5>"))


def test_prism_graph():
    g = cayley(PRISM4)
    assert g.n == 8
    assert all(g.degree(v) == 3 for v in range(g.n))
    rungs = [e for e in g.edges if e.color == "b"]
    assert len(rungs) == 4 and not any(e.directed for e in rungs)
    assert sum(e.color == "a" and e.directed for e in g.edges) == 8


def test_trivial_group_is_a_vertex_with_loops():
    g = cayley("<a,b | a^2, b^3, a b^-1>")
    assert g.n == 1
    assert all(e.tail == e.head == 0 for e in g.edges)
    assert {e.color for e in g.edges} == {"a", "b"}


def test_fixed_point_of_involution_is_a_half_loop():
    g = cayley("<a,b | a^2, b^2, b>")
    assert g.n == 2
    half = [e for e in g.edges if e.degenerate]
    assert [e.color for e in half] == ["b", "b"]


def test_triangle():
    g = cayley("<a | a^3>")
    assert g.n == 3
    assert sorted((e.tail, e.head) for e in g.edges) == [(0, 1), (1, 2), (2, 0)]
    assert ball(g, 0, 1).n == 3


def test_balls_of_the_cube():
    g = cayley(PRISM4)
    assert ball(g, 0, 0).n == 1 and not ball(g, 0, 0).edges
    assert ball(g, 0, 1).n == 4
    for v in range(g.n):
        b = ball(g, v, 3)
        assert b.n == 8 and len(b.edges) == len(g.edges)
        assert color_isomorphic(b, g)
    assert ball(g, 0, 2).n == 7


def test_colour_isomorphism_separates_colourings():
    square = cayley("<a,b | a^2, b^2, (a b)^2>")
    cyclic = cayley("<a,b | a^4, b a^-2>")
    assert square.n == cyclic.n == 4
    assert not color_isomorphic(square, cyclic)
    shuffled = type(square)(4, [Edge(3 - e.tail, 3 - e.head, e.color, e.directed, e.degenerate) for e in square.edges])
    assert color_isomorphic(square, shuffled)


def test_cycle_space_examples():
    g = cayley(PRISM4)
    assert cycle_space_dimension(g) == 12 - 8 + 1
    assert relator_span_rank(parse_presentation(PRISM4), g) == 5


# ---------------------------------------------------------------------------
# properties over random finite groups
# ---------------------------------------------------------------------------


def random_finite(seed, max_cosets=400):
    """A random two-generator presentation whose coset enumeration finishes, or ``None``."""
    rng = random.Random(seed)
    gens = ("a", "b")
    letters = [Letter(g, s) for g in gens for s in (1, -1)]
    rels = []
    for g in gens:
        if rng.random() < 0.6:
            rels.append((Letter(g, 1),) * rng.randint(2, 6))
    for _ in range(rng.randint(1, 2)):
        rels.append(tuple(rng.choice(letters) for _ in range(rng.randint(2, 8))))
    p = Presentation(gens, tuple(rels))
    if abelianization_is_infinite(p):
        return None
    try:
        return p, build_cayley_graph(p, coset_enumerate(p, max_cosets))
    except BudgetExceeded:
        return None


seeds = st.integers(0, 10**9)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_relators_close_at_every_vertex(seed):
    found = random_finite(seed)
    if found:
        p, g = found
        for v in range(g.n):
            for r in p.relators:
                assert relator_walk_vector(g, v, r)[0] == v


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_degree_invariant(seed):
    found = random_finite(seed)
    if found:
        p, g = found
        inv = involution_set(p)
        expected = 2 * len(set(p.generators) - inv) + len(inv)
        # a directed loop contributes both of its ends; a half-loop contributes one
        assert all(g.degree(v) == expected for v in range(g.n))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_relators_span_the_cycle_space(seed):
    found = random_finite(seed)
    if found:
        p, g = found
        assert (
            relator_span_rank(p, g)
            == cycle_space_dimension(g)
            == len(g.edges) - sum(e.degenerate for e in g.edges) - g.n + 1
        )


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(0, 10**6))
def test_vertex_transitivity(seed, pick):
    found = random_finite(seed, max_cosets=120)
    if found:
        _, g = found
        v = pick % g.n
        assert color_isomorphic(ball(g, 0, 2), ball(g, v, 2))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_order_matches_sympy(seed):
    found = random_finite(seed, max_cosets=200)
    if found:
        p, g = found
        assert g.n == sympy_order(p)
