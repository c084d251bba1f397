"""Core catalog entries: the five classical series, their pole-parameter
generalizations, and the finite summation forms that terminate them.

Every form is a closure ``f(ctx, p, n)`` evaluated against whichever
context the identity's mode selects; ``p`` carries the bound parameters
as Fractions and ``n`` is the summation bound for finite identities
(``None`` otherwise).
"""

from .base import (
    ANALYTIC,
    Correction,
    EXACT,
    FORMAL,
    Identity,
    ParameterSpec,
    count_param,
)


def _geom_gap(ctx, x, y, m):
    """x*q^m/(1 - x*q^m) - y*q^m/(1 - y*q^m), the recurring weight factor."""
    qm = ctx.Q(m)
    return x * qm / (1 - x * qm) - y * qm / (1 - y * qm)


def _e1():
    def product_side(ctx, p, n):
        return ctx.poch_inf(-p.a, 1) / ctx.poch_inf(p.b, 1)

    def sum_side(ctx, p, n):
        def term(k):
            return (
                ctx.rev2(p.a, -p.b, -1, k)
                * ctx.Q(k * (k + 1) // 2)
                / (ctx.poch(1, 1, k) * ctx.poch(p.b, 1, k))
            )

        return ctx.sum_inf(term, start=0)

    return Identity(
        id="E1",
        source="expansion of a shifted product ratio",
        params=(ParameterSpec("a"), ParameterSpec("b")),
        mode=FORMAL,
        forms=(product_side, sum_side),
    )


def _e2():
    def weighted_sum(ctx, p, n):
        def term(k):
            return (
                k
                * p.a ** k
                * ctx.Q(k * k)
                / (ctx.poch(1, 1, k) * ctx.poch(p.a, 1, k))
            )

        return ctx.poch_inf(p.a, 1) * ctx.sum_inf(term)

    def theta_sum(ctx, p, n):
        def term(k):
            return (
                (-1) ** (k - 1)
                * p.a ** k
                * ctx.Q(k * (k + 1) // 2)
                / (1 - ctx.Q(k))
            )

        return ctx.sum_inf(term)

    return Identity(
        id="E2",
        source="weighted series for a shifted infinite product",
        params=(ParameterSpec("a"),),
        mode=FORMAL,
        forms=(weighted_sum, theta_sum),
    )


def _e3():
    def sum_side(ctx, p, n):
        def term(k):
            return ctx.rev2(p.a, p.b, -1, k) / (
                (1 - ctx.Q(k)) * ctx.poch(p.b, 0, k)
            )

        return ctx.sum_inf(term)

    def lambert_side(ctx, p, n):
        head = p.a / (1 - p.a) - p.b / (1 - p.b)
        return head + ctx.lambert(p.a) - ctx.lambert(p.b)

    return Identity(
        id="E3",
        source="divisor-sum difference identity",
        params=(ParameterSpec("a"), ParameterSpec("b")),
        mode=ANALYTIC,
        forms=(sum_side, lambert_side),
    )


def _e4():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                (-1) ** (k - 1)
                * p.z ** k
                * ctx.Q(k * (k + 1) // 2)
                / ((1 - ctx.Q(k)) * ctx.poch(p.z, 1, k))
            )

        return ctx.sum_inf(term)

    def lambert_side(ctx, p, n):
        return ctx.lambert(p.z)

    return Identity(
        id="E4",
        source="partial-theta expansion of a Lambert series",
        params=(ParameterSpec("z"),),
        mode=FORMAL,
        forms=(theta_sum, lambert_side),
    )


def _e5():
    def sum_side(ctx, p, n):
        def term(k):
            return (
                p.a ** k
                * ctx.poch(1, 1, k - 1)
                / ((1 - ctx.Q(k)) * ctx.poch(p.a, 0, k))
            )

        return ctx.sum_inf(term)

    def lambert_side(ctx, p, n):
        return p.a / (1 - p.a) ** 2 + ctx.wlambert(p.a)

    return Identity(
        id="E5",
        source="weighted divisor-sum identity",
        params=(ParameterSpec("a"),),
        mode=ANALYTIC,
        forms=(sum_side, lambert_side),
    )


def _kluyver():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                (-1) ** (k - 1)
                * ctx.Q(k * (k + 1) // 2)
                / ((1 - ctx.Q(k)) * ctx.poch(1, 1, k))
            )

        return ctx.sum_inf(term)

    def divisor_sum(ctx, p, n):
        return ctx.lambert(1)

    return Identity(
        id="KLUYVER",
        source="divisor generating function as an alternating series",
        params=(),
        mode=FORMAL,
        forms=(theta_sum, divisor_sum),
    )


def _uchimura_triple():
    def weighted_tail(ctx, p, n):
        def term(k):
            return k * ctx.Q(k) * ctx.poch_inf(1, k + 1)

        return ctx.sum_inf(term)

    def theta_sum(ctx, p, n):
        def term(k):
            return (
                (-1) ** (k - 1)
                * ctx.Q(k * (k + 1) // 2)
                / ((1 - ctx.Q(k)) * ctx.poch(1, 1, k))
            )

        return ctx.sum_inf(term)

    def divisor_sum(ctx, p, n):
        return ctx.lambert(1)

    return Identity(
        id="UCHIMURA-TRIPLE",
        source="three series for the divisor generating function",
        params=(),
        mode=FORMAL,
        forms=(weighted_tail, theta_sum, divisor_sum),
    )


def _dm():
    def sum_side(ctx, p, n):
        def term(k):
            return ctx.rev2(p.a, p.b, -1, k) / (
                (1 - p.c * ctx.Q(k)) * ctx.poch(p.b, 0, k)
            )

        return ctx.sum_inf(term)

    def weighted_side(ctx, p, n):
        def term(k):
            return (
                ctx.rev2(p.c, p.b, -1, k)
                / ctx.poch(p.b, 0, k)
                * _geom_gap(ctx, p.a, p.b, k)
            )

        return ctx.sum_inf(term, start=0)

    return Identity(
        id="DM",
        source="two-variable divisor-sum transformation",
        params=(ParameterSpec("a"), ParameterSpec("b"), ParameterSpec("c")),
        mode=ANALYTIC,
        forms=(sum_side, weighted_side),
    )


def _dm_cor():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                (-1) ** (k - 1)
                * p.z ** k
                * ctx.Q(k * (k + 1) // 2)
                / ((1 - p.c * ctx.Q(k)) * ctx.poch(p.z, 1, k))
            )

        return ctx.sum_inf(term)

    def folded_sum(ctx, p, n):
        def term(k):
            return (
                p.z
                * ctx.Q(k)
                * ctx.rev2(p.c, p.z, 0, k - 1)
                / ctx.poch(p.z, 1, k)
            )

        return ctx.sum_inf(term)

    return Identity(
        id="DM-COR",
        source="partial-theta transformation with a free pole parameter",
        params=(ParameterSpec("z"), ParameterSpec("c")),
        mode=FORMAL,
        forms=(theta_sum, folded_sum),
    )


def _garvan():
    def odd_theta(ctx, p, n):
        def term(k):
            return (
                (-1) ** (k - 1)
                * p.z ** k
                * ctx.Q(k * k)
                / (ctx.poch(p.z, 1, k, 2) * (1 - p.z * ctx.Q(2 * k)))
            )

        return ctx.sum_inf(term)

    def factorial_sum(ctx, p, n):
        def term(k):
            return (
                ctx.poch(1, 1, k - 1)
                * p.z ** k
                * ctx.Q(k * (k + 1) // 2)
                / ctx.poch(p.z, 1, k)
            )

        return ctx.sum_inf(term)

    return Identity(
        id="GARVAN",
        source="partial-theta transformation on the odd lattice",
        params=(ParameterSpec("z"),),
        mode=FORMAL,
        forms=(odd_theta, factorial_sum),
    )


def _andrews_qs():
    def square_sum(ctx, p, n):
        def term(k):
            return (
                (p.z * p.c) ** k
                * ctx.Q(k * k)
                / (ctx.poch(p.z, 1, k) * ctx.poch(p.c, 1, k))
            )

        return ctx.sum_inf(term)

    def linear_sum(ctx, p, n):
        def term(k):
            return p.z * p.c ** k * ctx.Q(k) / ctx.poch(p.z, 1, k)

        return ctx.sum_inf(term)

    return Identity(
        id="ANDREWS-QS",
        source="double-product quotient series transformation",
        params=(ParameterSpec("z"), ParameterSpec("c")),
        mode=FORMAL,
        forms=(square_sum, linear_sum),
    )


def _dems():
    def sum_side(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(p.a, 0, n - k)
                * ctx.rev2(p.a, p.b, -1, k)
                * ctx.poch(1, 1, k)
                / (
                    ctx.poch(p.a, 0, n)
                    * (1 - p.c * ctx.Q(k))
                    * ctx.poch(p.b, 0, k)
                )
            )

        return ctx.sum_range(1, n, term)

    def weighted_side(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(p.c, 1, n - k)
                * ctx.rev2(p.c, p.b, -1, k - 1)
                * ctx.poch(1, 1, k)
                / (ctx.poch(p.c, 1, n) * ctx.poch(p.b, 0, k - 1))
                * _geom_gap(ctx, p.a, p.b, k - 1)
            )

        return ctx.sum_range(1, n, term)

    return Identity(
        id="DEMS",
        source="finite divisor-sum transformation",
        params=(
            ParameterSpec("a"),
            ParameterSpec("b"),
            ParameterSpec("c"),
            count_param(),
        ),
        mode=EXACT,
        forms=(sum_side, weighted_side),
    )


def _dems_cor():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * (-1) ** (k - 1)
                * p.z ** k
                * ctx.Q(k * (k + 1) // 2)
                * ctx.poch(1, 1, k)
                / ((1 - p.c * ctx.Q(k)) * ctx.poch(p.z, 1, k))
            )

        return ctx.sum_range(1, n, term)

    def folded_sum(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(p.c, 1, n - k)
                * ctx.rev2(p.c, p.z, 0, k - 1)
                * ctx.poch(1, 1, k)
                * p.z
                * ctx.Q(k)
                / (ctx.poch(p.c, 1, n) * ctx.poch(p.z, 1, k))
            )

        return ctx.sum_range(1, n, term)

    def folded_sum_short_poch(ctx, p, n):
        # denominator stops one factor early
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(p.c, 1, n - k)
                * ctx.rev2(p.c, p.z, 0, k - 1)
                * ctx.poch(1, 1, k)
                * p.z
                * ctx.Q(k)
                / (ctx.poch(p.c, 1, n) * ctx.poch(p.z, 1, k - 1))
            )

        return ctx.sum_range(1, n, term)

    return Identity(
        id="DEMS-COR",
        source="finite partial-theta transformation",
        params=(ParameterSpec("z"), ParameterSpec("c"), count_param()),
        mode=EXACT,
        forms=(theta_sum, folded_sum),
        corrections=(
            Correction(
                note="printed right side ends its denominator product one "
                "factor early; the transcription with that denominator "
                "leaves a nonzero residual already at the smallest bound",
                literal_forms=(theta_sum, folded_sum_short_poch),
            ),
        ),
    )


def _dems_garvan():
    def odd_theta(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k, 2)
                * (-1) ** (k - 1)
                * ctx.poch(1, 2, k, 2)
                * p.z ** k
                * ctx.Q(k * k)
                / (ctx.poch(p.z, 1, k, 2) * (1 - p.z * ctx.Q(2 * k)))
            )

        return ctx.sum_range(1, n, term)

    def paired_sum(ctx, p, n):
        def term(k):
            low = (
                ctx.poch(1, 1, 2 * k - 2)
                * p.z ** (2 * k - 1)
                * ctx.Q(k * (2 * k - 1))
                / ctx.poch(p.z, 1, 2 * k - 1)
            )
            high = (
                ctx.poch(1, 1, 2 * k - 1)
                * p.z ** (2 * k)
                * ctx.Q(k * (2 * k + 1))
                / ctx.poch(p.z, 1, 2 * k)
            )
            return (
                ctx.qbin(n, k, 2)
                * (low + high)
                * ctx.poch(1, 2, k, 2)
                / ctx.poch(p.z, 2 * n + 1, k, 2)
            )

        return ctx.sum_range(1, n, term)

    return Identity(
        id="DEMS-GARVAN",
        source="finite odd-lattice partial-theta transformation",
        params=(ParameterSpec("z"), count_param()),
        mode=EXACT,
        forms=(odd_theta, paired_sum),
    )


def _bem():
    def sum_side(ctx, p, n):
        def term(k):
            return (
                ctx.rev2(p.a, p.b, -1, k)
                * ctx.rev2(p.d, p.c, -1, k)
                / (ctx.poch(p.b, 0, k) * ctx.poch(p.c, 1, k))
            )

        return ctx.sum_inf(term)

    def weighted_side(ctx, p, n):
        front = (p.a - p.b) * (p.d - p.c) / (p.a * p.d - p.b)

        def term(k):
            return (
                ctx.poch(p.a, 0, k)
                * ctx.rev2(p.c, p.b * p.d, -1, k)
                / (ctx.poch(p.b, 0, k) * ctx.poch(p.a * p.d, 0, k))
                * _geom_gap(ctx, p.a * p.d, p.b, k)
            )

        return front * ctx.sum_inf(term, start=0)

    return Identity(
        id="BEM",
        source="four-parameter divisor-sum transformation",
        params=(
            ParameterSpec("a"),
            ParameterSpec("b"),
            ParameterSpec("c"),
            ParameterSpec("d"),
        ),
        mode=ANALYTIC,
        forms=(sum_side, weighted_side),
        pole_guards=(lambda q, b, n: b["a"] * b["d"] != b["b"],),
    )


def _dp():
    def sum_side(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k)
                * ctx.rev2(p.a, p.b, -1, k)
                * ctx.rev2(p.d, p.c, -1, k)
                * ctx.poch(p.a * p.d, 0, n - k)
                / (
                    ctx.poch(p.b, 0, k)
                    * ctx.poch(p.c, 1, k)
                    * ctx.poch(p.a * p.d, 0, n)
                )
            )

        return ctx.sum_range(1, n, term)

    def weighted_side(ctx, p, n):
        front = (p.a - p.b) * (p.d - p.c) / (p.a * p.d - p.b)

        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k)
                * ctx.poch(p.c, 1, n - k)
                * ctx.poch(p.a, 0, k - 1)
                * ctx.rev2(p.c, p.b * p.d, -1, k - 1)
                / (
                    ctx.poch(p.b, 0, k - 1)
                    * ctx.poch(p.a * p.d, 0, k - 1)
                    * ctx.poch(p.c, 1, n)
                )
                * _geom_gap(ctx, p.a * p.d, p.b, k - 1)
            )

        return front * ctx.sum_range(1, n, term)

    return Identity(
        id="DP",
        source="finite four-parameter divisor-sum transformation",
        params=(
            ParameterSpec("a"),
            ParameterSpec("b"),
            ParameterSpec("c"),
            ParameterSpec("d"),
            count_param(),
        ),
        mode=EXACT,
        forms=(sum_side, weighted_side),
        pole_guards=(lambda q, b, n: b["a"] * b["d"] != b["b"],),
    )


def _dp_phi21():
    def split_sum(ctx, p, n):
        def head(k):
            return (
                ctx.qbin(n, k)
                * k
                * (-1) ** (k - 1)
                * ctx.rev2(p.d, p.c, -1, k)
                * ctx.Q(k * (k + 1) // 2)
                / ctx.poch(p.c, 1, k)
            )

        front = (
            ctx.poch_inf(p.c / p.d, 0)
            * ctx.poch_inf(p.d, 1)
            / (ctx.poch_inf(p.c, 1) * ctx.poch_inf(p.d, n + 1))
        )

        def tail(k):
            hyper = ctx.phi(
                [(p.d, 1), (p.d, n + 1)],
                [(p.d, k + 1)],
                (p.c / p.d, k),
            )
            return (
                ctx.qbin(n, k)
                * p.d ** k
                * ctx.Q(k * (k + 1))
                / (ctx.poch(p.d, 1, k) * (1 - ctx.Q(k)))
                * hyper
            )

        return ctx.sum_range(1, n, head) + front * ctx.sum_range(1, n, tail)

    def closed_sum(ctx, p, n):
        head = (
            p.c
            / (p.c - p.d)
            * (1 - ctx.poch(p.d, 1, n) / ctx.poch(p.c, 1, n))
        )

        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.rev2(p.d, p.c, 0, k)
                * ctx.poch(p.d, 1, n - k)
                * ctx.Q(k)
                / (1 - ctx.Q(k))
            )

        return head + ctx.sum_range(1, n, term) / ctx.poch(p.c, 1, n)

    return Identity(
        id="DP-PHI21",
        source="finite weighted partial-theta transformation",
        params=(ParameterSpec("c"), ParameterSpec("d"), count_param()),
        mode=FORMAL,
        forms=(split_sum, closed_sum),
        pole_guards=(
            lambda q, b, n: b["d"] != 0,
            lambda q, b, n: b["c"] != b["d"],
        ),
    )


def entry_identities():
    return (
        _e1(),
        _e2(),
        _e3(),
        _e4(),
        _e5(),
        _kluyver(),
        _uchimura_triple(),
        _dm(),
        _dm_cor(),
        _garvan(),
        _andrews_qs(),
        _dems(),
        _dems_cor(),
        _dems_garvan(),
        _bem(),
        _dp(),
        _dp_phi21(),
    )
