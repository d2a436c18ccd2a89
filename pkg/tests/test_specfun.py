import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exact_oracles import dual_hahn_exact, weight_exact
from trihahn import (DualHahnParams, PoleError, dual_hahn, hyp3f2_terminating,
                     log_gamma_signed, multi_pochhammer, norm_h, pochhammer,
                     weight_w)
from trihahn.specfun import SignedLog, slog_pochhammer


class TestPochhammer:
    def test_empty_product(self):
        assert pochhammer(5.0, 0) == 1

    def test_integers(self):
        assert pochhammer(3, 2) == 12

    def test_exact_rational(self):
        assert pochhammer(F(1, 2), 3) == F(15, 8)

    def test_exact_zero_at_nonpositive_integer(self):
        assert pochhammer(-1, 2) == 0
        assert pochhammer(-3, 10) == 0
        assert pochhammer(-3, 3) != 0  # stops just before the zero factor

    def test_multi(self):
        assert multi_pochhammer([2, 3], 1) == 6
        assert multi_pochhammer([F(1, 2)], 3) == pochhammer(F(1, 2), 3)
        assert multi_pochhammer([-1, 5], 2) == 0

    @given(
        st.fractions(min_value=-10, max_value=10, max_denominator=20),
        st.integers(min_value=0, max_value=10),
        st.integers(min_value=0, max_value=10),
    )
    @settings(max_examples=200, deadline=None)
    def test_addition_identity(self, a, n, m):
        assert pochhammer(a, n + m) == pochhammer(a, n) * pochhammer(a + n, m)

    def test_addition_identity_float(self):
        a = 0.7310529172
        for n, m in [(3, 4), (0, 7), (10, 10)]:
            lhs = pochhammer(a, n + m)
            rhs = pochhammer(a, n) * pochhammer(a + n, m)
            assert abs(lhs - rhs) <= 1e-12 * abs(lhs)


class TestLogGammaSigned:
    def test_one(self):
        s = log_gamma_signed(1)
        assert s.sign == 1 and abs(s.log_abs) < 1e-15

    def test_half(self):
        s = log_gamma_signed(F(1, 2))
        assert s.sign == 1
        assert math.isclose(s.log_abs, math.log(math.sqrt(math.pi)), rel_tol=1e-14)

    def test_reflection_minus_half(self):
        # Gamma(-1/2) = -2 sqrt(pi)
        s = log_gamma_signed(-0.5)
        assert s.sign == -1
        assert math.isclose(s.log_abs, math.log(2 * math.sqrt(math.pi)), rel_tol=1e-13)

    def test_sign_alternation(self):
        assert log_gamma_signed(-1.5).sign == 1
        assert log_gamma_signed(-2.5).sign == -1

    @pytest.mark.parametrize("x", [0, -1, -5, -3 + 1e-13])
    def test_poles(self, x):
        with pytest.raises(PoleError):
            log_gamma_signed(x)

    def test_positive_matches_lgamma(self):
        for x in (0.3, 2.0, 17.25):
            assert math.isclose(log_gamma_signed(x).log_abs, math.lgamma(x), rel_tol=1e-15)


class TestSignedLog:
    def test_roundtrip(self):
        # exp(log(v)) costs ~|log v| ulps of relative error at large magnitude
        for v in (3.5, -0.002, 1e200):
            assert SignedLog.from_value(v).value() == pytest.approx(v, rel=1e-13)

    def test_zero(self):
        z = SignedLog.zero()
        assert z.sign == 0 and z.value() == 0.0
        assert (z * SignedLog.from_value(5.0)).value() == 0.0

    def test_mul_div_sqrt(self):
        a, b = SignedLog.from_value(-6.0), SignedLog.from_value(1.5)
        assert (a * b).value() == pytest.approx(-9.0, rel=1e-14)
        assert (a / b).value() == pytest.approx(-4.0, rel=1e-14)
        assert (a * a).sqrt().value() == pytest.approx(6.0, rel=1e-14)
        with pytest.raises(ValueError):
            a.sqrt()

    def test_slog_pochhammer_matches_direct(self):
        assert slog_pochhammer(-2.5, 4).value() == pytest.approx(
            pochhammer(-2.5, 4), rel=1e-13
        )
        assert slog_pochhammer(-3.0, 5).sign == 0


class TestHyp3F2:
    def test_n_zero(self):
        assert hyp3f2_terminating(0, 7, 2.3, 1.1, 4.0) == 1.0

    def test_x_zero(self):
        assert hyp3f2_terminating(5, 0, 2.3, 1.1, 4.0) == 1.0

    def test_two_term_expansion(self):
        top3, b1, b2 = 2.7, 1.3, 0.9
        got = hyp3f2_terminating(1, 1, top3, b1, b2)
        assert got == pytest.approx(1.0 + top3 / (b1 * b2), rel=1e-15)

    def test_denominator_pole(self):
        with pytest.raises(PoleError):
            hyp3f2_terminating(3, 3, 1.0, -1.0, 2.0)

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            hyp3f2_terminating(-1, 2, 1.0, 1.0, 1.0)


class TestDualHahn:
    def test_degree_zero(self):
        assert dual_hahn(0, 4, DualHahnParams(0.3, 1.1, 2.0)) == 1.0

    def test_degree_one_expansion(self):
        # d_1(x) = (alpha+1)(gamma+1) + x(x+gamma+delta+1): the s=1 term of the
        # series carries (-1)_1 (-x)_1 = +x
        al, de, ga = 0.7, 2.1, 1.3
        for x in range(5):
            want = (al + 1) * (ga + 1) + x * (x + ga + de + 1)
            assert dual_hahn(1, x, DualHahnParams(al, de, ga)) == pytest.approx(
                want, rel=1e-14
            )

    def test_frozen_value_via_term_sum(self):
        # independent literal summation gives 20 at n=2, x=1, all params zero
        assert dual_hahn_exact(2, 1, 0, 0, 0) == 20
        assert dual_hahn(2, 1, DualHahnParams(0, 0, 0)) == pytest.approx(20.0, rel=1e-14)

    def test_against_term_sum_grid(self, fig1):
        al, de, ga = fig1.b + 3 - 1, fig1.a + 3, F(-4)
        p = DualHahnParams(al, de, ga)
        for n in range(4):
            for x in range(4):
                want = float(dual_hahn_exact(n, x, al, de, ga))
                assert dual_hahn(n, x, p) == pytest.approx(want, rel=1e-10)

    def test_against_term_sum_high_degree(self, fig1, fig2):
        # pole-free triples built from the reference rationals; degrees and
        # arguments up to 12 against the literal term-by-term sum
        for src in (fig1, fig2):
            al, de, ga = src.a, src.b, src.c
            p = DualHahnParams(al, de, ga)
            for n in range(0, 13, 3):
                for x in range(0, 13, 3):
                    want = float(dual_hahn_exact(n, x, al, de, ga))
                    assert dual_hahn(n, x, p) == pytest.approx(want, rel=1e-10)

    def test_vanishes_beyond_truncation(self):
        # gamma + 1 = -y makes the prefactor vanish for degrees above y
        p = DualHahnParams(4.5, 9.0, -3.0)  # truncation 2
        assert dual_hahn(3, 1, p) == 0.0
        assert dual_hahn(5, 2, p) == 0.0


class TestWeightNorm:
    def test_weight_at_zero(self):
        assert weight_w(0, DualHahnParams(0.4, 3.0, 1.7)) == 1.0

    def test_weight_x1_direct_substitution(self):
        al, de, ga = 0.4, 3.0, 1.7
        want = ((ga + de + 1) * (ga / 2 + de / 2 + 1.5) * (al + 1) * (ga + 1) * (-1)
                / ((ga / 2 + de / 2 + 0.5) * (ga + de - al + 1) * (de + 1)))
        assert weight_w(1, DualHahnParams(al, de, ga)) == pytest.approx(want, rel=1e-14)

    def test_weight_matches_exact(self, fig1):
        al, de, ga = fig1.b + 4 - 1, fig1.a + 4, F(-5)
        p = DualHahnParams(al, de, ga)
        for x in range(5):
            assert weight_w(x, p) == pytest.approx(
                float(weight_exact(x, al, de, ga)), rel=1e-12
            )

    def test_norm_ratio_identity(self):
        p = DualHahnParams(0.4, 3.0, 1.7)
        h0 = norm_h(0, p)
        for n in (1, 2, 3):
            want = h0 * math.factorial(n) * pochhammer(1.4, n) * pochhammer(2.7, n) * pochhammer(0.4 - 3.0 + 1, n)
            assert norm_h(n, p) == pytest.approx(want, rel=1e-12)

    def test_h0_is_gamma_ratio(self):
        al, de, ga = 0.4, 3.0, 1.7
        want = (
            log_gamma_signed(ga + de - al + 1).value()
            * log_gamma_signed(de + 1).value()
            / (log_gamma_signed(ga + de + 2).value() * log_gamma_signed(de - al).value())
        )
        assert norm_h(0, DualHahnParams(al, de, ga)) == pytest.approx(want, rel=1e-13)

    @pytest.mark.parametrize("y", [0, 2, 5])
    def test_orthogonality_first_family(self, fig1, y):
        # truncation is carried by the gamma slot: gamma + 1 = -y
        al, de, ga = fig1.b + y - 1, fig1.a + y, F(-y - 1)
        p = DualHahnParams(al, de, ga)
        assert p.truncation() == y
        w = [weight_w(x, p) for x in range(y + 1)]
        for n in range(y + 1):
            for m in range(n, y + 1):
                s = math.fsum(
                    w[x] * dual_hahn(n, x, p) * dual_hahn(m, x, p) for x in range(y + 1)
                )
                expect = norm_h(n, p) if n == m else 0.0
                scale = math.sqrt(norm_h(n, p) * norm_h(m, p))
                assert abs(s - expect) <= 1e-8 * scale

    @pytest.mark.parametrize("i", [0, 3, 6])
    def test_orthogonality_second_family(self, fig2, i):
        al, de, ga = i + fig2.c + 6 - 1, i + fig2.b + 6, F(i - 6 - 1)
        p = DualHahnParams(al, de, ga)
        t = 6 - i
        assert p.truncation() == t
        w = [weight_w(x, p) for x in range(t + 1)]
        for n in range(t + 1):
            for m in range(n, t + 1):
                s = math.fsum(
                    w[x] * dual_hahn(n, x, p) * dual_hahn(m, x, p) for x in range(t + 1)
                )
                expect = norm_h(n, p) if n == m else 0.0
                scale = math.sqrt(norm_h(n, p) * norm_h(m, p))
                assert abs(s - expect) <= 1e-8 * scale

    def test_three_term_recurrence_embedded_triples(self, fig1, fig2):
        # pointwise, on the alpha-truncated (swapped) form of every embedded
        # triple, where all square-root coefficients are nonnegative
        from trihahn.checks import univariate_recurrence

        for p in (fig1, fig2):
            r = univariate_recurrence(p, tol=1e-8)
            assert r.passed, r.detail

    def test_slot_swap_invariance(self):
        # d, w, h are invariant under (alpha, delta, gamma) ->
        # (gamma, gamma+delta-alpha, alpha); the truncation moves slots
        p = DualHahnParams(F(7, 2), F(23, 4), F(-4))
        q = p.swapped()
        for n in range(3):
            for x in range(3):
                assert dual_hahn(n, x, p) == pytest.approx(dual_hahn(n, x, q), rel=1e-13)
            assert weight_w(n, p) == pytest.approx(weight_w(n, q), rel=1e-13)
            assert norm_h(n, p) == pytest.approx(norm_h(n, q), rel=1e-12)
