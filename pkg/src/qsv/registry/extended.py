"""One-variable extensions of the core entries and their finite analogues.

The extension parameter ``e`` enters through reversed products, so every
form stays polynomial in ``e`` and the ``e = 0`` / ``e = 1`` edges of the
specialization lattice are ordinary evaluation points.
"""

from .base import (
    ANALYTIC,
    Correction,
    EXACT,
    FORMAL,
    Identity,
    ParameterSpec,
    count_param,
    is_q_power,
)
from .entries import _geom_gap


def _no_q_power(name):
    # reversed products (e - q)...(e - q^n) must stay nonzero
    def guard(q, binding, n):
        return q is None or not is_q_power(binding[name], q)

    return guard


def _thm_2_1():
    def sum_side(ctx, p, n):
        def term(k):
            return (
                ctx.rev2(p.a, p.b, -1, k)
                * ctx.rev2(p.d, p.c, -1, k)
                * ctx.rev(p.e, k - 1)
                / (
                    ctx.poch(p.b, 0, k)
                    * ctx.poch(p.c, 1, k)
                    * ctx.poch(1, 1, k - 1)
                )
            )

        return ctx.sum_inf(term)

    def weighted_side(ctx, p, n):
        front = (
            (p.a - p.b)
            * (p.d - p.c)
            / (p.a * p.d - p.b)
            * ctx.poch_inf(p.c * p.e, 1)
            * ctx.poch_inf(p.a * p.d, 0)
            / (ctx.poch_inf(p.c, 1) * ctx.poch_inf(p.a * p.d * p.e, 0))
        )

        def term(k):
            return (
                ctx.poch(p.a, 0, k)
                * ctx.rev2(p.c, p.b * p.d, -1, k)
                * ctx.rev(p.e, k)
                / (
                    ctx.poch(p.b, 0, k)
                    * ctx.poch(p.a * p.d, 0, k)
                    * ctx.poch(1, 1, k)
                )
                * _geom_gap(ctx, p.a * p.d, p.b, k)
            )

        return front * ctx.sum_inf(term, start=0)

    return Identity(
        id="THM-2-1",
        source="five-parameter divisor-sum transformation",
        params=(
            ParameterSpec("a"),
            ParameterSpec("b"),
            ParameterSpec("c"),
            ParameterSpec("d"),
            ParameterSpec("e"),
        ),
        mode=ANALYTIC,
        forms=(sum_side, weighted_side),
        pole_guards=(lambda q, b, n: b["a"] * b["d"] != b["b"],),
    )


def _thm_2_5():
    def sum_side(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k)
                * ctx.rev2(p.a, p.b, -1, k)
                * ctx.rev2(p.d, p.c, -1, k)
                * ctx.rev(p.e, k - 1)
                * ctx.poch(p.a * p.d * p.e, 0, n - k)
                / (
                    ctx.poch(p.b, 0, k)
                    * ctx.poch(p.c, 1, k)
                    * ctx.poch(1, 1, k - 1)
                )
            )

        return ctx.sum_range(1, n, term)

    def weighted_side(ctx, p, n):
        front = (
            (p.a - p.b)
            * (p.d - p.c)
            / (p.a * p.d - p.b)
            * ctx.poch(p.a * p.d, 0, n)
            / ctx.poch(p.c, 1, n)
        )

        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k)
                * ctx.poch(p.c * p.e, 1, n - k)
                * ctx.poch(p.a, 0, k - 1)
                * ctx.rev2(p.c, p.b * p.d, -1, k - 1)
                * ctx.rev(p.e, k - 1)
                / (
                    ctx.poch(p.b, 0, k - 1)
                    * ctx.poch(p.a * p.d, 0, k - 1)
                    * ctx.poch(1, 1, k - 1)
                )
                * _geom_gap(ctx, p.a * p.d, p.b, k - 1)
            )

        return front * ctx.sum_range(1, n, term)

    return Identity(
        id="THM-2-5",
        source="finite five-parameter divisor-sum transformation",
        params=(
            ParameterSpec("a"),
            ParameterSpec("b"),
            ParameterSpec("c"),
            ParameterSpec("d"),
            ParameterSpec("e"),
            count_param(),
        ),
        mode=EXACT,
        forms=(sum_side, weighted_side),
        pole_guards=(lambda q, b, n: b["a"] * b["d"] != b["b"],),
    )


def _cor_2_2():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                (-p.z) ** k
                * ctx.rev2(p.d, p.c, -1, k)
                * ctx.rev(p.e, k - 1)
                * ctx.Q(k * (k + 1) // 2)
                / (
                    ctx.poch(p.z, 1, k)
                    * ctx.poch(p.c, 1, k)
                    * ctx.poch(1, 1, k - 1)
                )
            )

        return ctx.sum_inf(term)

    def folded_sum(ctx, p, n):
        front = (
            p.z * (p.c - p.d) * ctx.poch_inf(p.c * p.e, 1) / ctx.poch_inf(p.c, 1)
        )

        def term(k):
            return (
                ctx.rev2(p.c, p.z * p.d, 0, k - 1)
                * ctx.rev(p.e, k - 1)
                * ctx.Q(k)
                / (ctx.poch(p.z, 1, k) * ctx.poch(1, 1, k - 1))
            )

        return front * ctx.sum_inf(term)

    return Identity(
        id="COR-2-2",
        source="extended partial-theta transformation, four parameters",
        params=(
            ParameterSpec("z"),
            ParameterSpec("c"),
            ParameterSpec("d"),
            ParameterSpec("e"),
        ),
        mode=FORMAL,
        forms=(theta_sum, folded_sum),
    )


def _cor_2_3():
    def square_sum(ctx, p, n):
        def term(k):
            return (
                ctx.rev(p.e, k - 1)
                * (p.c * p.z) ** k
                * ctx.Q(k * k)
                / (
                    ctx.poch(p.z, 1, k)
                    * ctx.poch(p.c, 1, k)
                    * ctx.poch(1, 1, k - 1)
                )
            )

        return ctx.sum_inf(term)

    def linear_sum(ctx, p, n):
        front = p.z * ctx.poch_inf(p.c * p.e, 1) / ctx.poch_inf(p.c, 1)

        def term(k):
            return (
                ctx.rev(p.e, k - 1)
                * p.c ** k
                * ctx.Q(k)
                / (ctx.poch(p.z, 1, k) * ctx.poch(1, 1, k - 1))
            )

        return front * ctx.sum_inf(term)

    return Identity(
        id="COR-2-3",
        source="extended double-product quotient transformation",
        params=(ParameterSpec("z"), ParameterSpec("c"), ParameterSpec("e")),
        mode=FORMAL,
        forms=(square_sum, linear_sum),
    )


def _cor_2_4():
    def sum_side(ctx, p, n):
        def term(k):
            return (
                ctx.rev2(p.a, p.b, -1, k)
                * ctx.rev(p.e, k - 1)
                / (
                    (1 - p.c * ctx.Q(k))
                    * ctx.poch(p.b, 0, k)
                    * ctx.poch(1, 1, k - 1)
                )
            )

        return ctx.sum_inf(term)

    def weighted_side(ctx, p, n):
        front = (
            ctx.poch_inf(p.c * p.e, 1)
            * ctx.poch_inf(p.a, 0)
            / (ctx.poch_inf(p.c, 1) * ctx.poch_inf(p.a * p.e, 0))
        )

        def term(k):
            return (
                ctx.rev2(p.c, p.b, -1, k)
                * ctx.rev(p.e, k)
                / (ctx.poch(p.b, 0, k) * ctx.poch(1, 1, k))
                * _geom_gap(ctx, p.a, p.b, k)
            )

        return front * ctx.sum_inf(term, start=0)

    return Identity(
        id="COR-2-4",
        source="extended divisor-sum transformation with a free pole",
        params=(
            ParameterSpec("a"),
            ParameterSpec("b"),
            ParameterSpec("c"),
            ParameterSpec("e"),
        ),
        mode=ANALYTIC,
        forms=(sum_side, weighted_side),
    )


def _cor_2_6():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k)
                * (-p.z) ** k
                * ctx.rev2(p.d, p.c, -1, k)
                * ctx.rev(p.e, k - 1)
                * ctx.Q(k * (k + 1) // 2)
                / (
                    ctx.poch(p.z, 1, k)
                    * ctx.poch(p.c, 1, k)
                    * ctx.poch(1, 1, k - 1)
                )
            )

        return ctx.sum_range(1, n, term)

    def folded_sum(ctx, p, n):
        front = p.z * (p.c - p.d) / ctx.poch(p.c, 1, n)

        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k)
                * ctx.poch(p.c * p.e, 1, n - k)
                * ctx.rev2(p.c, p.z * p.d, 0, k - 1)
                * ctx.rev(p.e, k - 1)
                * ctx.Q(k)
                / (ctx.poch(p.z, 1, k) * ctx.poch(1, 1, k - 1))
            )

        return front * ctx.sum_range(1, n, term)

    return Identity(
        id="COR-2-6",
        source="finite extended partial-theta transformation",
        params=(
            ParameterSpec("z"),
            ParameterSpec("c"),
            ParameterSpec("d"),
            ParameterSpec("e"),
            count_param(),
        ),
        mode=EXACT,
        forms=(theta_sum, folded_sum),
    )


def _cor_2_7():
    def square_sum(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k)
                * ctx.rev(p.e, k - 1)
                * (p.z * p.c) ** k
                * ctx.Q(k * k)
                / (
                    ctx.poch(p.z, 1, k)
                    * ctx.poch(p.c, 1, k)
                    * ctx.poch(1, 1, k - 1)
                )
            )

        return ctx.sum_range(1, n, term)

    def linear_sum(ctx, p, n):
        front = p.z / ctx.poch(p.c, 1, n)

        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k)
                * ctx.poch(p.c * p.e, 1, n - k)
                * ctx.rev(p.e, k - 1)
                * p.c ** k
                * ctx.Q(k)
                / (ctx.poch(p.z, 1, k) * ctx.poch(1, 1, k - 1))
            )

        return front * ctx.sum_range(1, n, term)

    return Identity(
        id="COR-2-7",
        source="finite extended double-product quotient transformation",
        params=(
            ParameterSpec("z"),
            ParameterSpec("c"),
            ParameterSpec("e"),
            count_param(),
        ),
        mode=EXACT,
        forms=(square_sum, linear_sum),
    )


def _cor_2_8():
    def sum_side(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k)
                * ctx.rev2(p.a, p.b, -1, k)
                * ctx.rev(p.e, k - 1)
                * ctx.poch(p.a * p.e, 0, n - k)
                / (
                    (1 - p.c * ctx.Q(k))
                    * ctx.poch(p.b, 0, k)
                    * ctx.poch(1, 1, k - 1)
                )
            )

        return ctx.sum_range(1, n, term)

    def weighted_side(ctx, p, n):
        front = ctx.poch(p.a, 0, n) / ctx.poch(p.c, 1, n)

        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k)
                * ctx.poch(p.c * p.e, 1, n - k)
                * ctx.rev2(p.c, p.b, -1, k - 1)
                * ctx.rev(p.e, k - 1)
                / (ctx.poch(p.b, 0, k - 1) * ctx.poch(1, 1, k - 1))
                * _geom_gap(ctx, p.a, p.b, k - 1)
            )

        return front * ctx.sum_range(1, n, term)

    return Identity(
        id="COR-2-8",
        source="finite extended divisor-sum transformation with a free pole",
        params=(
            ParameterSpec("a"),
            ParameterSpec("b"),
            ParameterSpec("c"),
            ParameterSpec("e"),
            count_param(),
        ),
        mode=EXACT,
        forms=(sum_side, weighted_side),
    )


def _thm_2_9():
    def odd_theta(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k, 2)
                * (-1) ** k
                * ctx.poch(1, 2, k, 2)
                * p.z ** k
                * ctx.rev2(p.d, p.z, -2, k, 2)
                * ctx.Q(k * k)
                / ((p.z - p.d) * ctx.poch(p.z, 1, 2 * k))
            )

        return ctx.sum_range(1, n, term)

    def paired_sum(ctx, p, n):
        def term(k):
            low = (
                ctx.poch(p.d, 1, 2 * k - 2)
                * p.z ** (2 * k - 1)
                * ctx.Q(k * (2 * k - 1))
                / ctx.poch(p.z, 1, 2 * k - 1)
            )
            high = (
                ctx.poch(p.d, 1, 2 * k - 1)
                * p.z ** (2 * k)
                * ctx.Q(k * (2 * k + 1))
                / ctx.poch(p.z, 1, 2 * k)
            )
            return (
                ctx.qbin(n, k, 2)
                * (low + high)
                * ctx.poch(1, 2, k, 2)
                / ctx.poch(p.d * p.z, 2 * n + 1, k, 2)
            )

        return ctx.sum_range(1, n, term)

    return Identity(
        id="THM-2-9",
        source="finite extended odd-lattice partial-theta transformation",
        params=(ParameterSpec("z"), ParameterSpec("d"), count_param()),
        mode=EXACT,
        forms=(odd_theta, paired_sum),
        pole_guards=(lambda q, b, n: b["z"] != b["d"],),
    )


def _garvan_gen():
    def odd_theta(ctx, p, n):
        def term(k):
            return (
                (-1) ** k
                * ctx.rev2(p.d, p.z, -2, k, 2)
                * p.z ** k
                * ctx.Q(k * k)
                / ((p.z - p.d) * ctx.poch(p.z, 1, 2 * k))
            )

        return ctx.sum_inf(term)

    def factorial_sum(ctx, p, n):
        def term(k):
            return (
                ctx.poch(p.d, 1, k - 1)
                * p.z ** k
                * ctx.Q(k * (k + 1) // 2)
                / ctx.poch(p.z, 1, k)
            )

        return ctx.sum_inf(term)

    return Identity(
        id="GARVAN-GEN",
        source="extended odd-lattice partial-theta transformation",
        params=(ParameterSpec("z"), ParameterSpec("d")),
        mode=FORMAL,
        forms=(odd_theta, factorial_sum),
        pole_guards=(lambda q, b, n: b["z"] != b["d"],),
    )


def _gen_e1():
    def product_side(ctx, p, n):
        return (
            ctx.poch_inf(-p.a, 1)
            * ctx.poch_inf(p.b * p.e, 0)
            / (ctx.poch_inf(-p.a * p.e, 0) * ctx.poch_inf(p.b, 1))
        )

    def sum_side(ctx, p, n):
        def term(k):
            return (
                (-1) ** k
                * ctx.rev2(p.a, -p.b, -1, k)
                * ctx.rev(p.e, k)
                / (ctx.poch(1, 1, k) * ctx.poch(p.b, 1, k))
            )

        return ctx.sum_inf(term, start=0)

    return Identity(
        id="GEN-E1",
        source="extended expansion of a shifted product ratio",
        params=(
            ParameterSpec("a"),
            ParameterSpec("b"),
            ParameterSpec(
                "e",
                analytic_bound=lambda drawn: (
                    None if drawn["a"] == 0 else 1 / abs(drawn["a"])
                ),
            ),
        ),
        mode=ANALYTIC,
        forms=(product_side, sum_side),
    )


def _gen_e2():
    def weighted_sum(ctx, p, n):
        front = ctx.poch_inf(p.a, 1) / ctx.poch_inf(p.a * p.e, 0)

        def term(k):
            return (
                (-1) ** k
                * k
                * ctx.rev(p.e, k)
                * p.a ** k
                * ctx.Q(k * (k - 1) // 2)
                / (ctx.poch(p.a, 1, k) * ctx.poch(1, 1, k))
            )

        return front * ctx.sum_inf(term)

    def geometric_side(ctx, p, n):
        def term(k):
            return ctx.rev(p.e, k) * p.a ** k / (1 - ctx.Q(k))

        return -ctx.sum_inf(term)

    return Identity(
        id="GEN-E2",
        source="extended weighted series for a shifted infinite product",
        params=(ParameterSpec("a"), ParameterSpec("e")),
        mode=ANALYTIC,
        forms=(weighted_sum, geometric_side),
    )


def _gen_e3():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                (-1) ** k
                * ctx.rev2(p.a, p.b, -1, k)
                * ctx.Q(k * (k + 1) // 2)
                / ((1 - ctx.Q(k)) * ctx.poch(p.b, 0, k) * ctx.rev(p.e, k))
            )

        return ctx.sum_inf(term)

    def split_side(ctx, p, n):
        def folded(k):
            return ctx.rev2(p.b * p.e, p.a, 0, k) / (
                (1 - ctx.Q(k)) * ctx.rev(p.e, k)
            )

        def geometric(k):
            return p.b ** k / (1 - ctx.Q(k))

        return ctx.sum_inf(folded) - ctx.sum_inf(geometric)

    return Identity(
        id="GEN-E3",
        source="extended divisor-sum difference identity",
        params=(ParameterSpec("a"), ParameterSpec("b"), ParameterSpec("e")),
        mode=ANALYTIC,
        forms=(theta_sum, split_side),
        pole_guards=(_no_q_power("e"),),
    )


def _gen_e4():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                p.z ** k
                * ctx.Q(k * (k + 1))
                / ((1 - ctx.Q(k)) * ctx.poch(p.z, 1, k) * ctx.rev(p.e, k))
            )

        return ctx.sum_inf(term)

    def lambert_side(ctx, p, n):
        def term(k):
            return (
                p.z ** k
                * ctx.Q(k)
                * (p.e ** k / ctx.rev(p.e, k) - 1)
                / (1 - ctx.Q(k))
            )

        return ctx.sum_inf(term)

    return Identity(
        id="GEN-E4",
        source="extended partial-theta expansion of a Lambert series",
        params=(ParameterSpec("z"), ParameterSpec("e")),
        mode=FORMAL,
        forms=(theta_sum, lambert_side),
    )


def _gen_e5():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                (-1) ** k
                * ctx.poch(1, 1, k - 1)
                * p.a ** k
                * ctx.Q(k * (k + 1) // 2)
                / ((1 - ctx.Q(k)) * ctx.poch(p.a, 0, k) * ctx.rev(p.e, k))
            )

        return ctx.sum_inf(term)

    def harmonic_side(ctx, p, n):
        def term(k):
            return p.a ** k / (1 - ctx.Q(k)) * ctx.revharm(p.e, k)

        return -ctx.sum_inf(term)

    return Identity(
        id="GEN-E5",
        source="extended weighted divisor-sum identity",
        params=(ParameterSpec("a"), ParameterSpec("e")),
        mode=ANALYTIC,
        forms=(theta_sum, harmonic_side),
        pole_guards=(_no_q_power("e"),),
    )


def _fin_e1():
    def product_side(ctx, p, n):
        return (
            ctx.poch(-p.a, 1, n)
            * ctx.poch(p.b * p.e, 0, n)
            / ctx.poch(p.b, 1, n)
        )

    def sum_side(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * (-1) ** k
                * ctx.poch(-p.a * p.e, 0, n - k)
                * ctx.rev2(p.a, -p.b, -1, k)
                * ctx.rev(p.e, k)
                / ctx.poch(p.b, 1, k)
            )

        return ctx.sum_range(0, n, term)

    return Identity(
        id="FIN-E1",
        source="finite extended expansion of a shifted product ratio",
        params=(ParameterSpec("a"), ParameterSpec("b"), ParameterSpec("e"), count_param()),
        mode=EXACT,
        forms=(product_side, sum_side),
    )


def _fin_e2():
    def weighted_sum(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * (-1) ** (k - 1)
                * k
                * ctx.rev(p.e, k)
                * p.a ** k
                * ctx.Q(k * (k - 1) // 2)
                / ctx.poch(p.a, 1, k)
            )

        return ctx.poch(p.a, 1, n) * ctx.sum_range(1, n, term)

    def geometric_side(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(p.a * p.e, 0, n - k)
                * ctx.poch(1, 1, k)
                * ctx.rev(p.e, k)
                * p.a ** k
                / (1 - ctx.Q(k))
            )

        return ctx.sum_range(1, n, term)

    return Identity(
        id="FIN-E2",
        source="finite extended weighted series for a shifted product",
        params=(ParameterSpec("a"), ParameterSpec("e"), count_param()),
        mode=EXACT,
        forms=(weighted_sum, geometric_side),
    )


def _fin_e3():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * (-1) ** k
                * ctx.poch(1, 1, k - 1)
                * ctx.rev2(p.a, p.b, -1, k)
                * ctx.Q(k * (k + 1) // 2)
                / (ctx.poch(p.b, 0, k) * ctx.rev(p.e, k))
            )

        return ctx.sum_range(1, n, term)

    def split_side(ctx, p, n):
        def folded(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k - 1)
                * ctx.poch(p.b, 0, n - k)
                * ctx.rev2(p.b * p.e, p.a, 0, k)
                / (ctx.poch(p.b, 0, n) * ctx.rev(p.e, k))
            )

        def geometric(k):
            return p.b * ctx.Q(k - 1) / (1 - p.b * ctx.Q(k - 1))

        return ctx.sum_range(1, n, folded) - ctx.sum_range(1, n, geometric)

    return Identity(
        id="FIN-E3",
        source="finite extended divisor-sum difference identity",
        params=(ParameterSpec("a"), ParameterSpec("b"), ParameterSpec("e"), count_param()),
        mode=EXACT,
        forms=(theta_sum, split_side),
        pole_guards=(_no_q_power("e"),),
    )


def _fin_e4():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k - 1)
                * p.z ** k
                * ctx.Q(k * (k + 1))
                / (ctx.poch(p.z, 1, k) * ctx.rev(p.e, k))
            )

        return ctx.sum_range(1, n, term)

    def split_side(ctx, p, n):
        def folded(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k - 1)
                * ctx.poch(p.z, 1, n - k)
                * p.z ** k
                * ctx.Q(k)
                * p.e ** k
                / (ctx.poch(p.z, 1, n) * ctx.rev(p.e, k))
            )

        def geometric(k):
            return p.z * ctx.Q(k) / (1 - p.z * ctx.Q(k))

        return ctx.sum_range(1, n, folded) - ctx.sum_range(1, n, geometric)

    def split_side_free_coeff(ctx, p, n):
        # printed transcription carries an unrelated symbol in the
        # folded numerator where the series variable belongs
        def folded(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k - 1)
                * ctx.poch(p.z, 1, n - k)
                * p.a ** k
                * ctx.Q(k)
                * p.e ** k
                / (ctx.poch(p.z, 1, n) * ctx.rev(p.e, k))
            )

        def geometric(k):
            return p.z * ctx.Q(k) / (1 - p.z * ctx.Q(k))

        return ctx.sum_range(1, n, folded) - ctx.sum_range(1, n, geometric)

    def theta_sum_ignore_extra(ctx, p, n):
        return theta_sum(ctx, p, n)

    return Identity(
        id="FIN-E4",
        source="finite extended partial-theta Lambert expansion",
        params=(ParameterSpec("z"), ParameterSpec("e"), count_param()),
        mode=EXACT,
        forms=(theta_sum, split_side),
        pole_guards=(_no_q_power("e"),),
        corrections=(
            Correction(
                note="printed right side raises a stray symbol to the series "
                "power; replacing it with the series variable closes the "
                "identity, and the stray-symbol transcription leaves a "
                "nonzero residual at the smallest bound",
                literal_forms=(theta_sum_ignore_extra, split_side_free_coeff),
                extra_params=("a",),
            ),
        ),
    )


def _fin_e5():
    def theta_sum(ctx, p, n):
        def term(k):
            finite = ctx.poch(1, 1, k - 1)
            return (
                ctx.qbin(n, k)
                * (-1) ** k
                * finite
                * finite
                * p.a ** k
                * ctx.Q(k * (k + 1) // 2)
                / (ctx.poch(p.a, 0, k) * ctx.rev(p.e, k))
            )

        return ctx.sum_range(1, n, term)

    def harmonic_side(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k - 1)
                * ctx.poch(p.a, 0, n - k)
                * p.a ** k
                / ctx.poch(p.a, 0, n)
                * ctx.revharm(p.e, k)
            )

        return -ctx.sum_range(1, n, term)

    return Identity(
        id="FIN-E5",
        source="finite extended weighted divisor-sum identity",
        params=(ParameterSpec("a"), ParameterSpec("e"), count_param()),
        mode=EXACT,
        forms=(theta_sum, harmonic_side),
        pole_guards=(_no_q_power("e"),),
    )


def extended_identities():
    return (
        _thm_2_1(),
        _thm_2_5(),
        _cor_2_2(),
        _cor_2_3(),
        _cor_2_4(),
        _cor_2_6(),
        _cor_2_7(),
        _cor_2_8(),
        _thm_2_9(),
        _garvan_gen(),
        _gen_e1(),
        _gen_e2(),
        _gen_e3(),
        _gen_e4(),
        _gen_e5(),
        _fin_e1(),
        _fin_e2(),
        _fin_e3(),
        _fin_e4(),
        _fin_e5(),
    )
