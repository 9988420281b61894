from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermite_chihara import (
    Poly,
    epsilons_from_sequence,
    poly,
    seq_classical,
    seq_family,
    seq_hermite,
    seq_order2,
    seq_order3,
)

coeff_lists = st.lists(
    st.fractions(min_value=F(-5), max_value=F(5), max_denominator=6), min_size=0, max_size=9
)


class TestPoly:
    def test_trim_and_degree(self):
        assert poly([1, 2, 0, 0]).coeffs == (1, 2)
        assert poly([]).degree == -1
        assert poly([0]).is_zero()

    def test_arithmetic(self):
        p = poly([1, 0, 3])
        q = poly([0, 2])
        assert (p + q).coeffs == (1, 2, 3)
        assert (p - p).is_zero()
        assert p.scale(F(1, 3)).coeffs == (F(1, 3), 0, 1)
        assert q.shift(2).coeffs == (0, 0, 0, 2)

    def test_derivative(self):
        p = poly([5, 4, 3, 2])  # 5 + 4x + 3x^2 + 2x^3
        assert p.derivative().coeffs == (4, 6, 6)
        assert p.derivative(2).coeffs == (6, 12)
        assert p.derivative(5).is_zero()

    def test_eval(self):
        p = poly([1, -2, 1])
        assert p(F(3)) == 4
        assert p(3.0) == pytest.approx(4.0)


class TestEpsilons:
    def test_hermite_is_plain_derivative(self):
        op = epsilons_from_sequence(seq_hermite(12))
        assert op.eps(1) == 1
        assert all(op.eps(k) == 0 for k in range(2, op.k_max + 1))

    def test_squares_family(self):
        op = epsilons_from_sequence(seq_order2(4, 12))
        assert op.epsilons[:3] == (1, 1, 0)
        assert all(e == 0 for e in op.epsilons[2:])

    def test_cubes_family(self):
        # eps2 = v1/2 - 1 and eps3 = (v2 - 3 v1 + 3)/6 from the general
        # order-3 operator; for (8, 27) that is (3, 1), and D x^2 = 8x forces
        # eps2 = 3 (an operator with eps2 = 1 would give D x^2 = 4x)
        op = epsilons_from_sequence(seq_order3(8, 27, 12))
        assert op.epsilons[:4] == (1, 3, 1, 0)
        assert all(e == 0 for e in op.epsilons[3:])

    def test_classical_closed_form(self):
        for gamma in (F(1), F(2), F(5)):
            op = epsilons_from_sequence(seq_classical(gamma, 12))
            for m in range(2, 13):
                assert op.eps(m) == F((-2) ** (m - 1), factorial(m)) * gamma / (gamma + 1)

    def test_defining_sums(self):
        # sum_{k<=n} eps_k n!/(n-k)! must reproduce v_{n-1}
        for seq in (seq_classical(F(5, 2), 10), seq_family(1, 5, F(1), 10), seq_order2(3, 10)):
            op = epsilons_from_sequence(seq)
            for n in range(1, op.k_max + 1):
                total = sum(op.eps(k) * F(factorial(n), factorial(n - k)) for k in range(1, n + 1))
                assert total == seq.values[n - 1]

    def test_horizon_guard(self):
        with pytest.raises(ValueError):
            epsilons_from_sequence(seq_hermite(4), K=9)


class TestApply:
    def test_annihilates_constants(self):
        op = epsilons_from_sequence(seq_hermite(6))
        assert op.apply(poly([7])).is_zero()

    def test_hermite_is_ordinary_derivative(self):
        op = epsilons_from_sequence(seq_hermite(6))
        assert op.apply(poly([0, 0, 0, 1])).coeffs == (0, 0, 3)

    def test_squares_weighted_derivative(self):
        op = epsilons_from_sequence(seq_order2(4, 6))
        # v_2 = 9: D x^3 = 9 x^2
        assert op.apply(poly([0, 0, 0, 1])).coeffs == (0, 0, 9)

    def test_monomial_consistency(self):
        for seq in (seq_classical(2, 12), seq_family(1, 5, F(1), 12)):
            op = epsilons_from_sequence(seq)
            for n in range(0, 13):
                mono = poly([0] * n + [1])
                expect = poly([0] * (n - 1) + [seq.values[n - 1]]) if n >= 1 else poly([])
                assert op.apply(mono) == expect
                assert op.apply_monomial_rule(mono) == expect

    def test_degree_guard(self):
        op = epsilons_from_sequence(seq_hermite(4), K=3)
        with pytest.raises(ValueError):
            op.apply(poly([0, 0, 0, 0, 1]))

    @settings(max_examples=40, deadline=None)
    @given(a=coeff_lists, b=coeff_lists, ca=st.fractions(max_denominator=5), cb=st.fractions(max_denominator=5))
    def test_linearity(self, a, b, ca, cb):
        op = epsilons_from_sequence(seq_classical(F(3, 2), 12))
        p, q = poly(a), poly(b)
        combo = p.scale(ca) + q.scale(cb)
        assert op.apply(combo) == op.apply(p).scale(ca) + op.apply(q).scale(cb)


class TestOrder:
    def test_hermite_order_1(self):
        assert epsilons_from_sequence(seq_hermite(10)).order().order == 1

    def test_cubes_order_3(self):
        verdict = epsilons_from_sequence(seq_order3(8, 27, 10)).order()
        assert verdict.finite and verdict.order == 3

    def test_order2_family_order_at_most_2(self):
        for v1 in (F(2), F(3), F(9, 2)):
            verdict = epsilons_from_sequence(seq_order2(v1, 12)).order()
            assert verdict.finite and verdict.order <= 2

    def test_order3_family_order_at_most_3(self):
        for v1, v2 in ((F(2), F(3)), (F(8), F(27)), (F(8), F(30))):
            verdict = epsilons_from_sequence(seq_order3(v1, v2, 12)).order()
            assert verdict.finite and verdict.order <= 3

    def test_classical_infinite_within_horizon(self):
        verdict = epsilons_from_sequence(seq_classical(1, 9)).order()
        assert not verdict.finite
        assert str(verdict) == "infinite within horizon K=10"


class TestACoefficients:
    def test_a_k_2_closed_form(self):
        # A_k(2) = v_{k-1} - k for any sequence
        for seq in (seq_classical(3, 12), seq_family(1, 5, F(1), 12), seq_order2(3, 12)):
            op = epsilons_from_sequence(seq)
            for k in range(2, 13):
                assert op.a_coefficient(k, 2) == seq.values[k - 1] - k

    def test_hermite_a_k_2_vanishes(self):
        op = epsilons_from_sequence(seq_hermite(12))
        assert all(op.a_coefficient(k, 2) == 0 for k in range(2, 13))

    def test_a_n_1_is_v(self):
        seq = seq_family(2, 7, F(1), 10)
        op = epsilons_from_sequence(seq)
        for n in range(1, 11):
            assert op.a_coefficient(n, 1) == seq.values[n - 1]

    def test_diagonal_value(self):
        op = epsilons_from_sequence(seq_classical(2, 10))
        for s in range(1, 11):
            assert op.a_coefficient(s, s) == factorial(s) * op.eps(s)

    def test_index_guard(self):
        op = epsilons_from_sequence(seq_hermite(5))
        with pytest.raises(ValueError):
            op.a_coefficient(2, 3)
        with pytest.raises(ValueError):
            op.a_coefficient(99, 1)
