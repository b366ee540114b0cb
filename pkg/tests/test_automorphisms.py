import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from freegog.automorphisms import (FreeAut, NotInvertible, OuterAutClass, compose,
                                   conjugate_aut, format_aut, identity, images_inner_witness,
                                   inner, inner_witness, is_inner, mccool_membership,
                                   outer_commutes, outer_equal, parse_aut)
from freegog.section4 import d_table, dphi_table, phi_squared_table
from freegog.words import Alphabet, random_word

from .oracles import brute_conjugator
from .strategies import AB, F4, nontrivial_words, random_aut, words

auts = st.integers(0, 2**32 - 1).map(lambda s: random_aut(random.Random(s), AB, 5))
auts4 = st.integers(0, 2**32 - 1).map(lambda s: random_aut(random.Random(s), F4, 4))


class TestCompose:
    def test_phi_squared(self, s4):
        assert list(compose(s4.phi, s4.phi).forward) == phi_squared_table(s4.gU, s4.F)

    def test_right_identity(self, s4):
        assert compose(s4.phi, identity(s4.F)) == s4.phi

    @given(words(max_size=5), words(max_size=5))
    def test_inner_is_a_homomorphism(self, h, k):
        assert compose(inner(h), inner(k)) == inner(h * k)

    def test_order_convention(self):
        # f first, then g
        f = parse_aut("a -> a*b; b -> b; inverse:; a -> a*b^-1; b -> b")
        g = parse_aut("a -> b; b -> a; inverse:; a -> b; b -> a")
        assert compose(f, g).image("a") == AB.word("b*a")

    @given(auts, auts, auts)
    def test_associative(self, f, g, h):
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(auts4, words(F4, 8), words(F4, 8))
def test_homomorphism(f, u, v):
    assert f(u * v) == f(u) * f(v)


@given(auts)
def test_inverse_roundtrip(f):
    assert compose(f, f.inverse()) == identity(AB)


def test_bad_inverse_rejected():
    with pytest.raises(NotInvertible):
        FreeAut(AB, ["a*b", "b"], ["a", "b"])


class TestInner:
    def test_witness_for_ab(self):
        assert inner_witness(inner(AB.word("a*b"))) == AB.word("a*b")

    def test_phi_is_not_inner(self, s4):
        assert inner_witness(s4.phi) is None

    def test_conjugation_of_b_by_a_is_inner(self):
        # a -> a, b -> a^-1 b a is Ad(a); a conjugator scan agrees
        f = parse_aut("a -> a; b -> a^-1*b*a; inverse:; a -> a; b -> a*b*a^-1")
        assert inner_witness(f) == AB.word("a")
        assert brute_conjugator(f.forward, AB, 4) == AB.word("a")

    def test_rank_one_refused(self):
        with pytest.raises(ValueError):
            is_inner(identity(Alphabet(["x"])))

    @given(words(max_size=6), auts)
    def test_inner_times_aut(self, h, f):
        g = compose(inner(h), f)
        assert outer_equal(f, g)
        w = inner_witness(compose(g, f.inverse()))
        assert compose(inner(w), f) == g

    @given(st.lists(words(max_size=4), min_size=2, max_size=2))
    def test_endomorphism_images_against_scan(self, images):
        # arbitrary images, not only automorphisms
        assert images_inner_witness(AB, images) == brute_conjugator(images, AB, 5)

    def test_short_image_automorphisms_against_scan(self):
        from .strategies import short_aut_sample
        for f in short_aut_sample(60, 3, seed=1):
            assert (inner_witness(f) is None) == (brute_conjugator(f.forward, AB, 5) is None)


class TestOuter:
    def test_phi2_is_d11(self, s4):
        assert outer_equal(s4.phi2, d_table(s4, 1, 1))

    def test_phi_vs_phi2(self, s4):
        assert not outer_equal(s4.phi, s4.phi2)

    def test_equivalence_on_corpus(self, s4):
        rng = random.Random(0)
        sample = [s4.phi, s4.phi2, d_table(s4, 1, 1), d_table(s4, 0, 0), d_table(s4, 2, -1)]
        sample += [compose(inner(random_word(s4.F, 3, rng)), s4.phi) for _ in range(3)]
        M = [[outer_equal(f, g) for g in sample] for f in sample]
        n = len(sample)
        for i, j, k in itertools.product(range(n), repeat=3):
            assert M[i][i]
            assert M[i][j] == M[j][i]
            if M[i][j] and M[j][k]:
                assert M[i][k]
        assert M[0][5] and M[0][7] and M[1][2] and not M[0][1]

    def test_outer_class_equality(self, s4):
        assert OuterAutClass(s4.phi2) == OuterAutClass(d_table(s4, 1, 1))
        assert (OuterAutClass(s4.phi) * OuterAutClass(s4.phi)) == OuterAutClass(s4.phi2)
        assert OuterAutClass(inner(s4.g)).is_trivial()


class TestCommute:
    @pytest.mark.parametrize("r,s", list(itertools.product(range(-3, 4), repeat=2)))
    def test_twist_grid(self, s4, r, s):
        D = d_table(s4, r, s)
        assert outer_commutes(D, s4.phi) == (r == s)
        assert outer_commutes(D, s4.phi2)

    @given(auts)
    def test_self(self, f):
        assert outer_commutes(f, f)


class TestConjugateAut:
    def test_table(self, s4):
        for r, s in [(0, 0), (2, -1), (-3, 3)]:
            D = d_table(s4, r, s)
            assert list(conjugate_aut(s4.phi, D.inverse()).forward) == dphi_table(s4, r, s)

    def test_by_identity(self, s4):
        assert conjugate_aut(s4.phi, identity(s4.F)) == s4.phi

    @given(words(max_size=5), auts)
    def test_inner_stays_inner(self, h, f):
        c = conjugate_aut(inner(h), f)
        assert c == inner(f(h))
        assert is_inner(c)


class TestMcCool:
    def test_psi_u_fixes_g(self):
        psi = parse_aut("a -> b^-1; b -> b*a*b; inverse:; a -> a*b*a; b -> a^-1")
        g = AB.word("a*b")
        assert psi(g) == g
        assert mccool_membership(psi, [g])

    def test_identity(self):
        assert mccool_membership(identity(AB), [AB.word("a*b"), AB.word("a"), AB.word("b*a^2")])

    def test_inversion_of_a(self):
        f = parse_aut("a -> a^-1; b -> b; inverse:; a -> a^-1; b -> b")
        m = mccool_membership(f, [AB.word("a*b")])
        assert not m and m.failures

    def test_proper_power_family_refused(self):
        with pytest.raises(ValueError):
            mccool_membership(identity(AB), [AB.word("a*a")])

    def test_witnesses_verify(self):
        f = compose(inner(AB.word("b")), parse_aut("a -> a; b -> b*a; inverse:; a -> a; b -> b*a^-1"))
        m = mccool_membership(f, [AB.word("a")])
        assert m and f(AB.word("a")).conjugate(m.witnesses[0]) == AB.word("a")

    @given(auts, nontrivial_words(max_size=5))
    def test_closed_under_composition(self, f, w):
        from freegog.words import is_proper_power
        if is_proper_power(w) is not None:
            return
        if mccool_membership(f, [w]):
            assert mccool_membership(compose(f, f), [w])

    @given(words(max_size=4), words(max_size=4))
    def test_closed_under_composition_constructed(self, h, k):
        psi = parse_aut("a -> b^-1; b -> b*a*b; inverse:; a -> a*b*a; b -> a^-1")
        f, g = compose(psi, inner(h)), compose(inner(k), psi.inverse())
        fam = [AB.word("a*b")]
        assert mccool_membership(f, fam) and mccool_membership(g, fam)
        assert mccool_membership(compose(f, g), fam)


class TestText:
    @given(auts)
    def test_roundtrip(self, f):
        assert parse_aut(format_aut(f)) == f

    def test_needs_inverse_block(self):
        with pytest.raises(ValueError):
            parse_aut("a -> b; b -> a")
