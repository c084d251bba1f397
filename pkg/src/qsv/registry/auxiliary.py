"""Reduction targets that are not catalog rows themselves.

The specialization lattice maps several catalog entries onto these at
edge values of the extension parameter; they get verified through those
edges and through finite-partner checks, not as standalone suite rows.
"""

from .base import EXACT, FORMAL, Identity, ParameterSpec, count_param


def _dp_fin_e1():
    def product_side(ctx, p, n):
        return ctx.poch(-p.a, 1, n) / ctx.poch(p.b, 1, n)

    def theta_sum(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.rev2(p.a, -p.b, -1, k)
                * ctx.Q(k * (k + 1) // 2)
                / ctx.poch(p.b, 1, k)
            )

        return ctx.sum_range(0, n, term)

    def linear_sum(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.rev2(p.b, -p.a, -1, k)
                * ctx.Q(k)
                * ctx.poch(p.b, 1, n - k)
                / ctx.poch(p.b, 1, n)
            )

        return ctx.sum_range(0, n, term)

    return Identity(
        id="DP-FIN-E1",
        source="finite expansion of a shifted product ratio",
        params=(ParameterSpec("a"), ParameterSpec("b"), count_param()),
        mode=EXACT,
        forms=(product_side, theta_sum, linear_sum),
    )


def _dp_fin_e2():
    def weighted_sum(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * k
                * p.a ** k
                * ctx.Q(k * k)
                / ctx.poch(p.a, 1, k)
            )

        return ctx.poch(p.a, 1, n) * ctx.sum_range(1, n, term)

    def theta_sum(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k)
                * (-1) ** (k - 1)
                * p.a ** k
                * ctx.Q(k * (k + 1) // 2)
                / (1 - ctx.Q(k))
            )

        return ctx.sum_range(1, n, term)

    return Identity(
        id="DP-FIN-E2",
        source="finite weighted series for a shifted product",
        params=(ParameterSpec("a"), count_param()),
        mode=EXACT,
        forms=(weighted_sum, theta_sum),
    )


def _dp_fin_e4():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(1, 1, k - 1)
                * (-1) ** (k - 1)
                * p.z ** k
                * ctx.Q(k * (k + 1) // 2)
                / ctx.poch(p.z, 1, k)
            )

        return ctx.sum_range(1, n, term)

    def geometric_sum(ctx, p, n):
        def term(k):
            return p.z * ctx.Q(k) / (1 - p.z * ctx.Q(k))

        return ctx.sum_range(1, n, term)

    return Identity(
        id="DP-FIN-E4",
        source="finite partial-theta Lambert expansion",
        params=(ParameterSpec("z"), count_param()),
        mode=EXACT,
        forms=(theta_sum, geometric_sum),
    )


def _bem_cor():
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                (-p.z) ** k
                * ctx.rev2(p.d, p.c, -1, k)
                * ctx.Q(k * (k + 1) // 2)
                / (ctx.poch(p.c, 1, k) * ctx.poch(p.z, 1, k))
            )

        return ctx.sum_inf(term)

    def folded_sum(ctx, p, n):
        def term(k):
            return (
                ctx.rev2(p.c, p.z * p.d, 0, k - 1)
                * ctx.Q(k)
                / ctx.poch(p.z, 1, k)
            )

        return p.z * (p.c - p.d) * ctx.sum_inf(term)

    return Identity(
        id="BEM-COR",
        source="partial-theta transformation, three parameters",
        params=(ParameterSpec("z"), ParameterSpec("c"), ParameterSpec("d")),
        mode=FORMAL,
        forms=(theta_sum, folded_sum),
    )


def auxiliary_identities():
    return (
        _dp_fin_e1(),
        _dp_fin_e2(),
        _dp_fin_e4(),
        _bem_cor(),
    )
