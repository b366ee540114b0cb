import pytest
from hypothesis import assume, given, strategies as st

from freegog.folding import expand, fold, subgroup_membership
from freegog.words import Alphabet

from .oracles import brute_membership
from .strategies import ABC, AB, F4, nontrivial_words, words


def test_visible_spelling():
    a, b = F4.gen("a"), F4.gen("b")
    m = subgroup_membership([a, b], F4.word("a*b^-1*a"))
    assert m and expand(m.witness, [a, b]) == F4.word("a*b^-1*a")


def test_non_member():
    assert not subgroup_membership([F4.gen("a"), F4.gen("b")], F4.gen("alpha"))


def test_g_gamma_g_inverse():
    g, gamma = F4.word("a*b"), F4.word("alpha*beta")
    m = subgroup_membership([g, gamma], g * gamma * g.inverse())
    assert m
    assert str(m.witness) == "x1*x2*x1^-1"


def test_empty_generator_list():
    with pytest.raises(ValueError):
        fold([])


def test_rank_of_core_graph():
    assert fold([AB.word("a*b"), AB.word("b*a")]).rank() == 2
    assert fold([AB.word("a^2"), AB.word("a^3")]).rank() == 1


gen_sets = st.sampled_from([AB, ABC]).flatmap(
    lambda A: st.lists(nontrivial_words(A, 4), min_size=1, max_size=2))


@given(gen_sets, st.data())
def test_products_are_members(gens, data):
    idx = data.draw(st.lists(st.tuples(st.integers(0, len(gens) - 1), st.booleans()), max_size=4))
    A = gens[0].alphabet
    w = A.identity
    for i, inv in idx:
        w = w * (gens[i].inverse() if inv else gens[i])
    m = subgroup_membership(gens, w)
    assert m and expand(m.witness, gens) == w


@given(gen_sets, st.data())
def test_agrees_with_brute_force(gens, data):
    A = gens[0].alphabet
    w = data.draw(words(A, 6))
    m = subgroup_membership(gens, w)
    if brute_membership(gens, w, 4):
        assert m
    if m:
        assert expand(m.witness, gens) == w
        # a member whose witness is short must be found by the enumeration
        if len(m.witness) <= 4:
            assert brute_membership(gens, w, 4)
