import pytest
from hypothesis import given
from hypothesis import strategies as st

from ppk.errors import DuplicateGenerator, PresentationSyntaxError, UnknownGenerator
from ppk.presentation import (
    Presentation,
    format_presentation,
    involution_set,
    parse_presentation,
    remove_obviously_redundant,
    symmetrized_alphabet,
    tietze_add_product_generator,
)
from ppk.words import Letter

from support import GRID, K5, PRISM4, W


def P(text):
    return parse_presentation(text)


def test_parse_expands_exponents():
    p = P("< a, b | a^2, b^3, a b a^-1 b >")
    assert p.generators == ("a", "b")
    assert p.relators == (W("a a", p), W("b b b", p), W("a b a^-1 b", p))


def test_parse_grid():
    p = P(GRID)
    assert p.generators == ("n", "e", "s", "w")
    assert len(p.relators) == 5
    assert p.relators[-1] == W("n e s w", p)


def test_parse_errors():
    with pytest.raises(UnknownGenerator):
        P("< a | b >")
    with pytest.raises(DuplicateGenerator):
        P("< a, a | a >")
    with pytest.raises(PresentationSyntaxError) as info:
        P("< a | a^ >")
    assert info.value.position is not None


def test_compact_words_need_single_letter_names():
    assert P("<a,b | ab>").relators == (W("a b", "<a,b|>"),)
    with pytest.raises(UnknownGenerator):
        P("<ab, c | abc>")
    assert P("<x1, x2 | x1 x2^-1>").relators[0] == (Letter("x1", 1), Letter("x2", -1))


def test_negative_exponents_and_groups():
    p = P("<a,b | a^-2, (a b)^2, 1>")
    assert p.relators[0] == W("a^-1 a^-1", p)
    assert p.relators[1] == W("a b a b", p)
    assert p.relators[2] == ()


def test_involution_set():
    assert involution_set(P(GRID)) == frozenset("nesw")
    assert involution_set(P(PRISM4)) == {"b"}
    assert involution_set(P("<a,b | a b a b>")) == frozenset()
    assert involution_set(P("<a | a^-2>")) == {"a"}


def test_symmetrized_alphabet():
    assert symmetrized_alphabet(P("<a,b,c | a^2, b^2>")) == W("a b c c^-1", "<a,b,c|>")
    assert symmetrized_alphabet(P("<a | >")) == W("a a^-1", "<a|>")
    assert symmetrized_alphabet(P("<a | a^2>")) == W("a", "<a|>")


def test_tietze_extension():
    p = P("<b,c | b^2, c^2>")
    q = tietze_add_product_generator(p, Letter("b", 1), Letter("c", 1), "x")
    assert q == P("<b,c,x | b^2, c^2, x^-1 b c>")
    q = tietze_add_product_generator(P("<a | a^3>"), Letter("a", 1), Letter("a", 1), "y")
    assert q == P("<a,y | a^3, y^-1 a a>")
    with pytest.raises(DuplicateGenerator):
        tietze_add_product_generator(p, Letter("b", 1), Letter("c", 1), "b")


def test_remove_obviously_redundant():
    assert remove_obviously_redundant(P("<b,c,x | b^2, c^2, x^-1 b c>")) == [P("<b,c | b^2, c^2>")]
    assert remove_obviously_redundant(P(K5)) == []
    assert remove_obviously_redundant(P("<a,x | a^3, x a^2>")) == [P("<a | a^3>")]


names = st.sampled_from(["a", "b", "c", "x1", "gen"])


@st.composite
def presentations(draw):
    gens = tuple(dict.fromkeys(draw(st.lists(names, min_size=1, max_size=4))))
    letter = st.builds(Letter, st.sampled_from(gens), st.sampled_from([1, -1]))
    rels = draw(st.lists(st.lists(letter, max_size=6).map(tuple), max_size=4))
    return Presentation(gens, tuple(rels))


@given(presentations())
def test_format_parse_round_trip(p):
    assert parse_presentation(format_presentation(p)) == p


@given(presentations())
def test_alphabet_size(p):
    assert len(symmetrized_alphabet(p)) == 2 * len(p.generators) - len(involution_set(p))


@given(presentations())
def test_removal_outputs_are_valid(p):
    for q in remove_obviously_redundant(p):
        assert len(q.generators) == len(p.generators) - 1
        assert len(q.relators) == len(p.relators) - 1
        Presentation(q.generators, q.relators)
