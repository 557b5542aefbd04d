import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppk.errors import InvalidStructure, NoBlock, UnknownLetter
from ppk.presentation import Presentation, parse_presentation, symmetrized_alphabet
from ppk.spin import (
    Ambiguous,
    CyclicOrder,
    GenericDecoration,
    SpinStructure,
    block_of_adjacent_letters,
    hinges,
    singleton_structure,
    validate_decoration,
    validate_spin_structure,
)
from ppk.words import Letter

from support import (
    AMALGAM_PRINTED,
    W,
    alphabet,
    amalgam,
    random_generic,
    random_structure,
)


def test_two_block_structure_is_valid():
    p, d = amalgam()
    assert validate_spin_structure(p, d.structure).ok
    assert hinges(d.structure) == frozenset(W("b", p))


def test_singleton_structure():
    p = parse_presentation("<a,b | b^2>")
    c = singleton_structure(symmetrized_alphabet(p))
    assert validate_spin_structure(p, c).ok
    assert len(c) == 1 and hinges(c) == frozenset()


def test_triangle_of_blocks_fails_tree_condition():
    p = parse_presentation("<a,b,c | a^2, b^2, c^2>")
    c = SpinStructure(tuple(frozenset(W(x, p)) for x in ("a b", "b c", "c a")))
    report = validate_spin_structure(p, c)
    assert not report.ok
    assert "S2" in {cond for cond, _ in report.violations}


def test_unbalanced_inverse_counts():
    p = parse_presentation("<a,b | >")
    c = SpinStructure(tuple(frozenset(W(x, p)) for x in ("a b", "a a^-1 b^-1")))
    assert "S1" in {cond for cond, _ in validate_spin_structure(p, c).violations}


def test_unknown_letter_and_cover():
    p = parse_presentation("<a | a^2>")
    with pytest.raises(UnknownLetter):
        validate_spin_structure(p, SpinStructure((frozenset(W("a^-1", "<a|>")),)))
    q = parse_presentation("<a,b | a^2, b^2>")
    report = validate_spin_structure(q, SpinStructure((frozenset(W("a", q)),)))
    assert "COVER" in {cond for cond, _ in report.violations}


def test_hinges_need_a_valid_structure():
    p = parse_presentation("<a,b,c | a^2, b^2, c^2>")
    bad = SpinStructure(tuple(frozenset(W(x, p)) for x in ("a b", "b c", "c a")))
    with pytest.raises(InvalidStructure):
        hinges(bad)


def test_decoration_validation_examples():
    p, d = amalgam()
    assert validate_decoration(p, d).ok
    _, broken = amalgam(mu={"b": {0: 0, 1: 0}})
    assert not validate_decoration(p, broken).ok
    short = GenericDecoration(d.structure, (CyclicOrder(W("b c", p)), d.sigma[1]), d.tau, d.mu)
    assert not validate_decoration(p, short).ok


def test_block_of_adjacent_letters():
    p, d = amalgam()
    c = d.structure
    assert block_of_adjacent_letters(*W("c b", p), c) == 0
    with pytest.raises(NoBlock):
        block_of_adjacent_letters(*W("c a", p), c)
    amb = block_of_adjacent_letters(*W("b b", p), c)
    assert isinstance(amb, Ambiguous) and set(amb.candidates) == {0, 1}


def test_cyclic_order_equality():
    p = parse_presentation(AMALGAM_PRINTED)
    x = CyclicOrder(W("a b c", p))
    assert x == CyclicOrder(W("b c a", p))
    assert x != CyclicOrder(W("a c b", p))
    assert x.equivalent(CyclicOrder(W("a c b", p)))
    with pytest.raises(ValueError):
        CyclicOrder(W("a a", p))


patterns = st.sampled_from([("ab", ""), ("ab", "b"), ("abc", "c"), ("abc", "ab"), ("ab", "ab"), ("abc", "")])


@settings(max_examples=150, deadline=None)
@given(patterns, st.integers(0, 10**6))
def test_valid_structures_have_block_facts(pattern, seed):
    gens, inv = pattern
    c = random_structure(random.Random(seed), alphabet(gens, inv))
    if len(c.blocks) >= 2:
        for i, bi in enumerate(c.blocks):
            assert bi & hinges(c)
            for bj in c.blocks[i + 1 :]:
                assert len(bi & bj) <= 1
    assert (hinges(c) == frozenset()) == (len(c.blocks) == 1)


@settings(max_examples=100, deadline=None)
@given(patterns, st.integers(0, 10**6))
def test_validity_survives_reflection_and_relabeling(pattern, seed):
    gens, inv = pattern
    rng = random.Random(seed)
    d = random_generic(rng, gens, inv)
    p = Presentation(tuple(gens), tuple((Letter(g, 1), Letter(g, 1)) for g in inv))
    assert validate_decoration(p, d).ok
    assert validate_decoration(p, d.reflected()).ok
    k = len(d.structure.blocks)
    perm = list(range(k))
    rng.shuffle(perm)
    blocks = [None] * k
    sigma = [None] * k
    for i, j in enumerate(perm):
        blocks[j], sigma[j] = d.structure.blocks[i], d.sigma[i]
    tau = {(g, perm[i]): v for (g, i), v in d.tau.items()}
    mu = {g: {perm[i]: perm[j] for i, j in m.items()} for g, m in d.mu.items()}
    relabeled = GenericDecoration(SpinStructure(tuple(blocks)), tuple(sigma), tau, mu)
    assert validate_decoration(p, relabeled).ok
