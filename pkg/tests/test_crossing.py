import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppk.blocked import block_chain, is_blocked
from ppk.crossing import decide_crossing, find_crossing, induces_double_ray
from ppk.errors import NotBlocked, NotReduced
from ppk.oracle import crossing_oracle
from ppk.presentation import parse_presentation
from ppk.spin import CyclicOrder, SpecialDecoration
from ppk.words import inverse_word

from support import W, amalgam, grid, random_generic, random_ray_word

NESW = frozenset("nesw")


def test_double_rays():
    p, _ = grid()
    assert induces_double_ray(W("n s", p), NESW)
    assert not induces_double_ray(W("b b", "<b|b^2>"), frozenset("b"))
    assert induces_double_ray(W("a b a^-1 b", "<a,b|b^2>"), frozenset("b"))
    assert not induces_double_ray((), frozenset())


@pytest.mark.parametrize(
    "w, z, expected",
    [("n s", "e w", True), ("n e s w", "n e s w", False), ("n e s w", "n s", False), ("n e s w", "e w", False)],
)
def test_grid_crossings(w, z, expected):
    p, d = grid()
    w, z = W(w, p), W(z, p)
    assert decide_crossing(w, z, d) is expected
    assert crossing_oracle(w, z, d) is expected


def test_single_ray_never_crosses_itself():
    p = parse_presentation("<a | a^3>")
    d = SpecialDecoration(CyclicOrder(W("a a^-1", p)), {"a": 0})
    w = W("a a a", p)
    assert not decide_crossing(w, w, d)
    assert not crossing_oracle(w, w, d)


def test_witness_describes_the_contact():
    p, d = grid()
    found = find_crossing(W("n s", p), W("e w", p), d)
    assert found is not None and found.shared == ()
    assert {found.w_branch_in, found.w_branch_out} == set(W("n s", p))


def test_refusals():
    p, d = amalgam()
    with pytest.raises(NotBlocked):
        decide_crossing(W("c a", p), W("a a a", p), d)
    with pytest.raises(NotReduced):
        decide_crossing(W("a a^-1", p), W("a a a", p), d)
    assert not decide_crossing(W("b b", p), W("a a a", p), d)


def test_blocked_examples():
    p, d = amalgam()
    assert is_blocked(W("c b c", p), d)
    assert is_blocked(W("a b a^-1 b", p), d)
    assert not is_blocked(W("c a", p), d)
    assert block_chain(W("a b a^-1 b", p), d) == (1, 1, 1, 1)
    with pytest.raises(NotBlocked):
        block_chain(W("c a", p), d)


# ---------------------------------------------------------------------------
# properties over random generic instances
# ---------------------------------------------------------------------------

patterns = st.sampled_from([("ab", ""), ("ab", "b"), ("ab", "ab"), ("abc", ""), ("abc", "c"), ("abc", "bc")])


def instance(pattern, seed, max_len=5):
    rng = random.Random(seed)
    d = random_generic(rng, *pattern)
    w, z = random_ray_word(rng, d, max_len), random_ray_word(rng, d, max_len)
    if w is None or z is None:
        return None
    return d, w, z, rng


def rotate(w, k):
    k %= len(w)
    return w[k:] + w[:k]


@settings(max_examples=200, deadline=None)
@given(patterns, st.integers(0, 10**9))
def test_fast_path_matches_oracle(pattern, seed):
    case = instance(pattern, seed)
    if case:
        d, w, z, _ = case
        assert decide_crossing(w, z, d) == crossing_oracle(w, z, d)


@settings(max_examples=150, deadline=None)
@given(patterns, st.integers(0, 10**9))
def test_symmetry_rotation_inversion(pattern, seed):
    case = instance(pattern, seed)
    if not case:
        return
    d, w, z, rng = case
    verdict = decide_crossing(w, z, d)
    assert decide_crossing(z, w, d) == verdict
    assert decide_crossing(rotate(w, rng.randrange(len(w))), rotate(z, rng.randrange(len(z))), d) == verdict
    assert decide_crossing(inverse_word(w), z, d) == verdict
    assert decide_crossing(w, inverse_word(z), d) == verdict


@settings(max_examples=150, deadline=None)
@given(patterns, st.integers(0, 10**9))
def test_global_reflection(pattern, seed):
    case = instance(pattern, seed)
    if case:
        d, w, z, _ = case
        assert decide_crossing(w, z, d.reflected()) == decide_crossing(w, z, d)


@settings(max_examples=100, deadline=None)
@given(patterns, st.integers(0, 10**9), st.integers(0, 10**6))
def test_oracle_ignores_free_block_placement(pattern, seed, layout_seed):
    case = instance(pattern, seed, max_len=4)
    if case:
        d, w, z, _ = case
        assert crossing_oracle(w, z, d, seed=layout_seed) == crossing_oracle(w, z, d)
