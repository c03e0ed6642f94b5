from math import gcd

import pytest
from hypothesis import given, strategies as st

import oracles
from sha_predict.abelian import AbelianGroupStructure
from sha_predict.arith import fundamental_pell, is_square
from sha_predict.errors import BoundExceeded
from sha_predict.qforms import (BinaryQuadraticForm as Form, class_group_definite,
                                class_number_definite, class_numbers_indefinite, compose,
                                enumerate_reduced, indefinite_cycles, principal_form,
                                reduce_definite, reduced_indefinite, rho,
                                wide_classes_indefinite)

neg_discs = st.integers(3, 4000).map(lambda n: -n).filter(lambda d: d % 4 in (0, 1))
pos_discs = st.integers(5, 3000).filter(lambda d: d % 4 in (0, 1) and not is_square(d))


@st.composite
def forms_of(draw, disc):
    return draw(st.sampled_from(enumerate_reduced(disc)))


def is_reduced(f):
    a, b, c = f
    return abs(b) <= a <= c and (b >= 0 or (abs(b) != a and a != c))


class TestDefinite:
    def test_reduction_example(self):
        assert reduce_definite(Form(3, 4, 5)) == Form(3, -2, 4)

    def test_reduced_forms_disc_minus_23(self):
        assert enumerate_reduced(-23) == [Form(1, 1, 6), Form(2, -1, 3), Form(2, 1, 3)]

    def test_composition_example(self):
        assert compose(Form(2, 1, 3), Form(2, 1, 3)) == Form(2, -1, 3)

    # order cross-checked with the reduced-form count and the
    # 2-rank with the number of ambiguous forms in TestClassGroupProperties
    @pytest.mark.parametrize("disc, divisors", [
        (-3, ()), (-4, ()), (-23, (3,)), (-56, (4,)), (-84, (2, 2)),
        (-420, (2, 2, 2)), (-3299, (3, 9)), (-4000, (2, 10)), (-3896, (3, 12)),
        (-2379, (4, 4)),
    ])
    def test_class_group_structure(self, disc, divisors):
        G = class_group_definite(disc)
        assert G == AbelianGroupStructure(divisors)
        assert G.order == oracles.count_reduced_definite(disc)

    def test_class_number_bound(self):
        with pytest.raises(BoundExceeded):
            class_group_definite(-3299, max_class_number=10)

    @given(st.integers(1, 30), st.integers(-30, 30), st.integers(1, 30),
           st.lists(st.sampled_from("STt"), max_size=12))
    def test_reduction_is_class_invariant(self, a, b, c, word):
        f = Form(a, b, c)
        if f.disc >= 0 or not f.is_primitive:
            return
        g = f
        for letter in word:  # act by S = [[0,-1],[1,0]], T = [[1,1],[0,1]], T^-1
            ga, gb, gc = g
            if letter == "S":
                g = Form(gc, -gb, ga)
            else:
                e = 1 if letter == "T" else -1
                g = Form(ga, gb + 2 * e * ga, ga + e * gb + gc)
        assert g.disc == f.disc
        assert reduce_definite(g) == reduce_definite(f)
        assert is_reduced(reduce_definite(f))


class TestClassGroupProperties:
    @given(neg_discs)
    def test_class_number_matches_counts(self, disc):
        h = class_number_definite(disc)
        assert h == oracles.count_reduced_definite(disc)
        if oracles.is_fundamental(disc):
            assert h == oracles.class_number_dirichlet_imag(disc)

    @given(neg_discs)
    def test_two_rank_is_genus_count(self, disc):
        G = class_group_definite(disc)
        ambiguous = [f for f in enumerate_reduced(disc)
                     if f.b == 0 or f.a == f.b or f.a == f.c]
        assert 2 ** G.primary_part(2).rank == len(ambiguous)

    @given(st.data())
    def test_group_axioms(self, data):
        disc = data.draw(neg_discs)
        f, g, h = (data.draw(forms_of(disc)) for _ in range(3))
        e = principal_form(disc)
        assert compose(f, e) == f
        assert compose(f, g) == compose(g, f)
        assert compose(compose(f, g), h) == compose(f, compose(g, h))
        assert compose(f, reduce_definite(f.inverse())) == e

    @given(st.data())
    def test_composite_represents_products(self, data):
        disc = data.draw(st.integers(3, 400).map(lambda n: -n).filter(lambda d: d % 4 in (0, 1)))
        f, g = data.draw(forms_of(disc)), data.draw(forms_of(disc))
        xs = data.draw(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
        m, n = f(xs[0], xs[1]), g(xs[2], xs[3])
        if gcd(xs[0], xs[1]) != 1 or gcd(xs[2], xs[3]) != 1:
            return
        assert oracles.form_represents(compose(f, g), m * n)


class TestIndefinite:
    # wide counts agree with the analytic class number formula
    @pytest.mark.parametrize("disc, hn, hw", [
        (5, 1, 1), (8, 1, 1), (12, 2, 1), (13, 1, 1), (40, 2, 2),
        (60, 4, 2), (136, 4, 2), (229, 3, 3), (316, 6, 3), (1345, 12, 6), (2089, 3, 3),
    ])
    def test_frozen(self, disc, hn, hw):
        assert class_numbers_indefinite(disc) == (hn, hw)
        if oracles.is_fundamental(disc):
            p = fundamental_pell(disc)
            assert oracles.class_number_dirichlet_real(disc, p.x, p.y) == hw

    def test_unit_of_disc_40_has_norm_minus_one(self):
        assert fundamental_pell(40).norm == -1

    @given(pos_discs)
    def test_rho_permutes_reduced_forms(self, disc):
        forms = set(reduced_indefinite(disc))
        assert {rho(f) for f in forms} == forms
        cycles = indefinite_cycles(disc)
        assert sum(len(c) for c in cycles) == len(forms)
        for cyc in cycles:
            assert len(cyc) % 2 == 0

    @given(pos_discs.filter(oracles.is_fundamental))
    def test_wide_matches_analytic_formula(self, disc):
        p = fundamental_pell(disc)
        hn, hw = class_numbers_indefinite(disc)
        assert hw == oracles.class_number_dirichlet_real(disc, p.x, p.y)
        assert hn == (hw if p.sign == -4 else 2 * hw)
        assert len(wide_classes_indefinite(disc)) == hw

    @pytest.mark.parametrize("disc", [-5, 0, 9, 7])
    def test_bad_discriminants(self, disc):
        with pytest.raises(ValueError):
            class_numbers_indefinite(disc)
