"""Tests for the three evaluation contexts against independent constructions."""

from fractions import Fraction

import pytest

from qsv.balls import Ball
from qsv.context import AnalyticCtx, ExactCtx, SeriesCtx
from qsv.errors import ModeMismatch, NonconvergentFormal
from qsv.series import (
    INFINITY,
    Monomial,
    lambert as lambert_series,
    poch_series,
    qbinom,
    weighted_lambert,
)

F = Fraction


def poch_value(x, n, q):
    out = F(1)
    for k in range(n):
        out *= 1 - x * q**k
    return out


class TestSeriesCtx:
    def test_poch_matches_direct(self):
        ctx = SeriesCtx(30)
        assert ctx.poch(F(1, 2), 1, 5) == poch_series(Monomial(F(1, 2), 1), 5, 30)
        # prefix cache answers shorter and longer requests alike
        assert ctx.poch(F(1, 2), 1, 3) == poch_series(Monomial(F(1, 2), 1), 3, 30)
        assert ctx.poch(F(1, 2), 1, 7) == poch_series(Monomial(F(1, 2), 1), 7, 30)
        assert ctx.poch(F(1, 2), 1, 0) == ctx.one()

    def test_poch_base_two(self):
        ctx = SeriesCtx(25)
        direct = ctx.one()
        for j in range(4):
            direct = direct.mul_one_minus(F(1, 3), 2 + 2 * j)
        assert ctx.poch(F(1, 3), 2, 4, r=2) == direct

    def test_poch_inf_passthrough(self):
        ctx = SeriesCtx(40)
        assert ctx.poch_inf(1, 1) == poch_series(Monomial(1, 1), INFINITY, 40)
        assert ctx.poch_inf(F(1, 2), 0, r=2) == poch_series(
            Monomial(F(1, 2), 0), INFINITY, 40, 2
        )

    def test_rev2_matches_product(self):
        ctx = SeriesCtx(20)
        x, c = F(1, 2), F(2, 3)
        direct = ctx.one()
        for j in (1, 2, 3):
            direct = direct * (ctx.one() * x - ctx.Q(-1 + 2 * j) * c)
        assert ctx.rev2(x, c, -1, 3, r=2) == direct

    def test_rev_at_zero_is_signed_power(self):
        ctx = SeriesCtx(30)
        for n in range(5):
            want = ctx.Q(n * (n + 1) // 2) * F((-1) ** n)
            assert (ctx.rev(0, n) - want).is_zero()

    def test_rev_at_zero_inverts_through_full_order(self):
        # tall exact monomials must survive division back to the order
        ctx = SeriesCtx(30)
        got = ctx.Q(42) / ctx.rev(0, 6)
        assert got.valid_through >= 30
        assert (got - ctx.Q(21)).is_zero()

    def test_harmonic_counts_divisors(self):
        h = SeriesCtx(24).harmonic(5)
        for mm in range(1, 25):
            assert h.coeff(mm) == sum(1 for d in range(1, 6) if mm % d == 0)

    def test_revharm_series_oracle(self):
        ctx = SeriesCtx(18)
        x, n = F(1, 2), 3
        got = ctx.revharm(x, n)
        # q^k/(x - q^k) expands to sum_{m>=1} q^{km}/x^m
        acc = {}
        for k in range(1, n + 1):
            mexp = 1
            while k * mexp <= 18:
                acc[k * mexp] = acc.get(k * mexp, F(0)) + x**-mexp
                mexp += 1
        for mm in range(1, 19):
            assert got.coeff(mm) == acc.get(mm, F(0))

    def test_revharm_at_zero(self):
        ctx = SeriesCtx(10)
        assert ctx.revharm(0, 7) == ctx.one() * (-7)

    def test_sum_inf_divisor_identity(self):
        ctx = SeriesCtx(30)
        total = ctx.sum_inf(lambda n: ctx.Q(n).div_one_minus(F(1), n))
        assert total == ctx.lambert(1)

    def test_sum_inf_raises_when_terms_stall(self):
        ctx = SeriesCtx(10)
        with pytest.raises(NonconvergentFormal):
            ctx.sum_inf(lambda n: ctx.one())

    def test_sum_range(self):
        ctx = SeriesCtx(15)
        got = ctx.sum_range(1, 4, lambda n: ctx.Q(n))
        want = ctx.Q(1) + ctx.Q(2) + ctx.Q(3) + ctx.Q(4)
        assert (got - want).is_zero()

    def test_qbin_passthrough(self):
        ctx = SeriesCtx(40)
        assert ctx.qbin(5, 2, r=3) == qbinom(5, 2, 3, 40)

    def test_phi_q_binomial_theorem(self):
        ctx = SeriesCtx(20)
        assert ctx.phi([(2, 0)], [], (1, 1)) == ctx.poch_inf(2, 1) / ctx.poch_inf(1, 1)

    def test_lambert_wlambert_passthrough(self):
        ctx = SeriesCtx(22)
        assert ctx.lambert(F(1, 2)) == lambert_series(F(1, 2), 22)
        assert ctx.wlambert(F(1, 2)) == weighted_lambert(F(1, 2), 22)


class TestExactCtx:
    def test_poch_and_rev(self):
        q = F(1, 5)
        ctx = ExactCtx(q)
        c = F(2, 3)
        want = F(1)
        for j in range(4):
            want *= 1 - c * q ** (1 + 2 * j)
        assert ctx.poch(c, 1, 4, r=2) == want
        x = F(1, 7)
        want = F(1)
        for j in range(1, 4):
            want *= x - c * q ** (-1 + 2 * j)
        assert ctx.rev2(x, c, -1, 3, r=2) == want
        assert ctx.rev(x, 3) == (x - q) * (x - q**2) * (x - q**3)

    def test_qbin_is_polynomial_value(self):
        q = F(1, 3)
        ctx = ExactCtx(q)
        for big_n, n, r in ((4, 2, 1), (5, 3, 2), (6, 0, 1), (6, 6, 1), (7, 2, 3)):
            assert ctx.qbin(big_n, n, r) == qbinom(big_n, n, r, 200).eval_at(q)
        assert ctx.qbin(4, 5) == 0
        assert ctx.qbin(4, -1) == 0

    def test_harmonic_revharm(self):
        q = F(1, 4)
        ctx = ExactCtx(q)
        assert ctx.harmonic(3) == sum(q**k / (1 - q**k) for k in range(1, 4))
        assert ctx.harmonic(0) == 0
        x = F(1, 2)
        assert ctx.revharm(x, 3) == sum(q**k / (x - q**k) for k in range(1, 4))
        assert ctx.revharm(F(0), 5) == -5

    def test_q_powers(self):
        ctx = ExactCtx(F(2, 7))
        assert ctx.Q(3) == F(8, 343)
        assert ctx.Q(-2) == F(49, 4)
        assert ctx.Q(0) == 1

    def test_infinite_constructs_rejected(self):
        ctx = ExactCtx(F(1, 5))
        with pytest.raises(ModeMismatch):
            ctx.poch_inf(1, 1)
        with pytest.raises(ModeMismatch):
            ctx.lambert(F(1, 2))
        with pytest.raises(ModeMismatch):
            ctx.wlambert(F(1, 2))
        with pytest.raises(ModeMismatch):
            ctx.sum_inf(lambda n: F(0))
        with pytest.raises(ModeMismatch):
            ctx.phi([(F(1, 2), 0), (F(1, 3), 0)], [(F(1, 5), 1)], (1, 1))

    def test_terminating_phi_is_exact(self):
        q = F(1, 4)
        ctx = ExactCtx(q)
        got = ctx.phi([(1, -2), (F(1, 2), 0)], [(F(1, 3), 0)], (1, 1))
        want = F(0)
        for n in range(3):
            t = (
                q**n
                * poch_value(q**-2, n, q)
                * poch_value(F(1, 2), n, q)
                / (poch_value(F(1, 3), n, q) * poch_value(q, n, q))
            )
            want += t
        assert got == want


class TestAnalyticCtx:
    def test_validation(self):
        with pytest.raises(ValueError):
            AnalyticCtx(F(2))
        with pytest.raises(ValueError):
            AnalyticCtx(F(1, 2), tol=0)

    def test_poch_inf_certified_against_series(self):
        q = F(1, 5)
        ctx = AnalyticCtx(q, tol=F(1, 10**25))
        ball = ctx.poch_inf(1, 1)
        assert not ball.heuristic
        assert 0 < ball.rad <= ctx.leaf_target
        approx = poch_series(Monomial(1, 1), INFINITY, 120).eval_at(q)
        assert abs(ball.mid - approx) <= ball.rad + F(2, 5**121)

    def test_poch_inf_with_base_and_negative_coeff(self):
        q = F(1, 3)
        ctx = AnalyticCtx(q)
        ball = ctx.poch_inf(F(-1, 2), 0, r=2)
        approx = poch_series(Monomial(F(-1, 2), 0), INFINITY, 150, 2).eval_at(q)
        assert abs(ball.mid - approx) <= ball.rad + F(1, 10**40)

    def test_lambert_point_vs_series(self):
        q = F(1, 5)
        ctx = AnalyticCtx(q)
        ball = ctx.lambert(F(1, 2))
        assert ball.heuristic
        v = lambert_series(F(1, 2), 100).eval_at(q)
        assert abs(ball.mid - v) <= ball.rad + F(1, 10**50)
        assert ctx.lambert(0) == 0

    def test_wlambert_point_vs_series(self):
        q = F(1, 5)
        ctx = AnalyticCtx(q)
        ball = ctx.wlambert(F(1, 3))
        v = weighted_lambert(F(1, 3), 100).eval_at(q)
        assert abs(ball.mid - v) <= ball.rad + F(1, 10**50)

    def test_sum_inf_geometric(self):
        ctx = AnalyticCtx(F(1, 5))
        ball = ctx.sum_inf(lambda n: ctx.Q(n), start=0)
        assert ball.heuristic
        assert abs(ball.mid - F(5, 4)) <= ball.rad

    def test_phi_nonterminating_ball(self):
        ctx = AnalyticCtx(F(1, 5))
        ball = ctx.phi([(F(1, 2), 0), (F(1, 3), 0)], [(F(1, 7), 1)], (F(1, 2), 0))
        assert isinstance(ball, Ball)
        assert ball.heuristic

    def test_phi_terminating_exact(self):
        ctx = AnalyticCtx(F(1, 5))
        got = ctx.phi([(1, -1), (F(1, 3), 0)], [(F(1, 7), 0)], (1, 1))
        assert isinstance(got, Fraction)

    def test_finite_parts_stay_exact(self):
        ctx = AnalyticCtx(F(1, 5))
        assert isinstance(ctx.poch(F(1, 2), 1, 3), Fraction)
        assert isinstance(ctx.harmonic(4), Fraction)
        assert isinstance(ctx.qbin(5, 2), Fraction)


class TestCrossMode:
    def test_euler_sum_equals_inverse_product(self):
        sctx = SeriesCtx(30)
        lhs = sctx.sum_inf(lambda n: sctx.Q(n) / sctx.poch(1, 1, n), start=0)
        assert lhs == 1 / sctx.poch_inf(1, 1)

        actx = AnalyticCtx(F(1, 7))
        alhs = actx.sum_inf(lambda n: actx.Q(n) / actx.poch(1, 1, n), start=0)
        diff = alhs - 1 / actx.poch_inf(1, 1)
        assert abs(diff.mid) <= diff.rad

    def test_series_eval_tracks_exact_ctx(self):
        q = F(1, 10)
        sctx = SeriesCtx(50)
        ectx = ExactCtx(q)
        s = sctx.poch(F(1, 2), 1, 6) * sctx.rev2(F(1, 3), F(1, 4), 0, 3) + sctx.harmonic(4)
        v = ectx.poch(F(1, 2), 1, 6) * ectx.rev2(F(1, 3), F(1, 4), 0, 3) + ectx.harmonic(4)
        # only the harmonic part is an infinite series; its coefficients are
        # bounded by the divisor count, so the cut tail stays tiny
        assert abs(s.eval_at(q) - v) < F(1, 10**45)
