"""Hypergeometric transformations, summation formulas, and the weighted
finite identities built from them.

The last three entries share whole building blocks: the hypergeometric
tail sum appears verbatim on both sides of the pair it links, so it is
factored out rather than inlined twice.
"""

from .base import (
    ANALYTIC,
    EXACT,
    FORMAL,
    Identity,
    ParameterSpec,
    count_param,
)


def _qbinom_thm():
    def series_side(ctx, p, n):
        return ctx.phi([(p.a, 0)], [], (p.z, 1))

    def product_side(ctx, p, n):
        return ctx.poch_inf(p.a * p.z, 1) / ctx.poch_inf(p.z, 1)

    return Identity(
        id="QBINOM-THM",
        source="q-binomial theorem",
        params=(ParameterSpec("a"), ParameterSpec("z")),
        mode=FORMAL,
        forms=(series_side, product_side),
    )


def _heine():
    def left(ctx, p, n):
        return ctx.phi([(p.a, 0), (p.b, 0)], [(p.c, 0)], (p.z, 0))

    def right(ctx, p, n):
        front = (
            ctx.poch_inf(p.a * p.z, 0)
            * ctx.poch_inf(p.b, 0)
            / (ctx.poch_inf(p.z, 0) * ctx.poch_inf(p.c, 0))
        )
        return front * ctx.phi(
            [(p.c / p.b, 0), (p.z, 0)], [(p.a * p.z, 0)], (p.b, 0)
        )

    return Identity(
        id="HEINE",
        source="series-argument exchange for a 2-by-1 series",
        params=(
            ParameterSpec("a"),
            ParameterSpec("b"),
            ParameterSpec("c"),
            ParameterSpec("z"),
        ),
        mode=ANALYTIC,
        forms=(left, right),
        pole_guards=(lambda q, b, n: b["b"] != 0,),
    )


def _qgauss():
    def series_side(ctx, p, n):
        return ctx.phi(
            [(p.a, 0), (p.b, 0)], [(p.c, 0)], (p.c / (p.a * p.b), 0)
        )

    def product_side(ctx, p, n):
        return (
            ctx.poch_inf(p.c / p.a, 0)
            * ctx.poch_inf(p.c / p.b, 0)
            / (ctx.poch_inf(p.c, 0) * ctx.poch_inf(p.c / (p.a * p.b), 0))
        )

    return Identity(
        id="QGAUSS",
        source="closed evaluation of a 2-by-1 series at its natural argument",
        params=(
            ParameterSpec("a"),
            ParameterSpec("b"),
            ParameterSpec(
                "c", analytic_bound=lambda drawn: abs(drawn["a"] * drawn["b"])
            ),
        ),
        mode=ANALYTIC,
        forms=(series_side, product_side),
        pole_guards=(
            lambda q, b, n: b["a"] != 0,
            lambda q, b, n: b["b"] != 0,
        ),
    )


def _phi32_iii9():
    def left(ctx, p, n):
        return ctx.phi(
            [(p.a, 0), (p.b, 0), (p.c, 0)],
            [(p.d, 0), (p.e, 0)],
            (p.d * p.e / (p.a * p.b * p.c), 0),
        )

    def right(ctx, p, n):
        front = (
            ctx.poch_inf(p.e / p.a, 0)
            * ctx.poch_inf(p.d * p.e / (p.b * p.c), 0)
            / (
                ctx.poch_inf(p.e, 0)
                * ctx.poch_inf(p.d * p.e / (p.a * p.b * p.c), 0)
            )
        )
        return front * ctx.phi(
            [(p.a, 0), (p.d / p.b, 0), (p.d / p.c, 0)],
            [(p.d, 0), (p.d * p.e / (p.b * p.c), 0)],
            (p.e / p.a, 0),
        )

    return Identity(
        id="PHI32-III9",
        source="argument exchange for a 3-by-2 series",
        params=(
            ParameterSpec("a"),
            ParameterSpec("e", analytic_bound=lambda drawn: abs(drawn["a"])),
            ParameterSpec("b"),
            ParameterSpec("c"),
            ParameterSpec(
                "d",
                analytic_bound=lambda drawn: abs(
                    drawn["a"] * drawn["b"] * drawn["c"] / drawn["e"]
                ),
            ),
        ),
        mode=ANALYTIC,
        forms=(left, right),
        pole_guards=(
            lambda q, b, n: b["a"] != 0,
            lambda q, b, n: b["b"] != 0,
            lambda q, b, n: b["c"] != 0,
            lambda q, b, n: b["e"] != 0,
        ),
    )


def _phi32_iii12():
    def left(ctx, p, n):
        return ctx.phi(
            [(1, -n), (p.b, 0), (p.c, 0)], [(p.d, 0), (p.e, 0)], (1, 1)
        )

    def right(ctx, p, n):
        front = ctx.poch(p.e / p.c, 0, n) / ctx.poch(p.e, 0, n) * p.c ** n
        return front * ctx.phi(
            [(1, -n), (p.c, 0), (p.d / p.b, 0)],
            [(p.d, 0), (p.c / p.e, 1 - n)],
            (p.b / p.e, 1),
        )

    def no_pole_shift(q, b, n):
        if q is None:
            return True
        return all(b["c"] != b["e"] * q ** j for j in range(n))

    return Identity(
        id="PHI32-III12",
        source="terminating 3-by-2 transformation at unit argument",
        params=(
            ParameterSpec("b"),
            ParameterSpec("c"),
            ParameterSpec("d"),
            ParameterSpec("e"),
            count_param(),
        ),
        mode=EXACT,
        forms=(left, right),
        pole_guards=(
            lambda q, b, n: b["b"] != 0,
            lambda q, b, n: b["c"] != 0,
            lambda q, b, n: b["e"] != 0,
            no_pole_shift,
        ),
    )


def _fin_heine():
    def left(ctx, p, n):
        return ctx.phi(
            [(1, -n), (p.a, 0), (p.b, 0)],
            [(p.c, 0), (1 / p.d, 1 - n)],
            (1, 1),
        )

    def right(ctx, p, n):
        front = (
            ctx.poch(p.b, 0, n)
            * ctx.poch(p.a * p.d, 0, n)
            / (ctx.poch(p.c, 0, n) * ctx.poch(p.d, 0, n))
        )
        return front * ctx.phi(
            [(1, -n), (p.c / p.b, 0), (p.d, 0)],
            [(p.a * p.d, 0), (1 / p.b, 1 - n)],
            (1, 1),
        )

    return Identity(
        id="FIN-HEINE",
        source="terminating series-argument exchange",
        params=(
            ParameterSpec("a"),
            ParameterSpec("b"),
            ParameterSpec("c"),
            ParameterSpec("d"),
            count_param(),
        ),
        mode=EXACT,
        forms=(left, right),
        pole_guards=(
            lambda q, b, n: b["b"] != 0,
            lambda q, b, n: b["d"] != 0,
        ),
    )


def _fin_heine_cor():
    def left(ctx, p, n):
        return ctx.phi(
            [(1, -n), (p.a, 0), (p.b, 0)],
            [(p.c, 0), (1 / p.d, 1 - n)],
            (1, 1),
        )

    def right(ctx, p, n):
        front = (
            ctx.poch(p.c / p.b, 0, n)
            * ctx.poch(p.b * p.d, 0, n)
            / (ctx.poch(p.c, 0, n) * ctx.poch(p.d, 0, n))
        )
        return front * ctx.phi(
            [(1, -n), (p.a * p.b * p.d / p.c, 0), (p.b, 0)],
            [(p.b * p.d, 0), (p.b / p.c, 1 - n)],
            (1, 1),
        )

    return Identity(
        id="FIN-HEINE-COR",
        source="terminating exchange, second parameter arrangement",
        params=(
            ParameterSpec("a"),
            ParameterSpec("b"),
            ParameterSpec("c"),
            ParameterSpec("d"),
            count_param(),
        ),
        mode=EXACT,
        forms=(left, right),
        pole_guards=(
            lambda q, b, n: b["b"] != 0,
            lambda q, b, n: b["c"] != 0,
            lambda q, b, n: b["d"] != 0,
        ),
    )


def _basic_4_1():
    # both sides packaged as generating polynomials in a free variable,
    # so a single equality checks the relation at every index at once
    def direct(ctx, p, n):
        def term(k):
            return p.z ** k * ctx.poch(1 / p.a, -n, k)

        return ctx.sum_range(0, n, term)

    def reflected(ctx, p, n):
        def term(k):
            return (
                p.z ** k
                * (-1) ** k
                * ctx.poch(p.a, n - k + 1, k)
                * p.a ** (-k)
                * ctx.Q(-n * k)
                * ctx.Q(k * (k - 1) // 2)
            )

        return ctx.sum_range(0, n, term)

    return Identity(
        id="BASIC-4-1",
        source="reflection of a falling product below the base point",
        params=(ParameterSpec("a"), ParameterSpec("z"), count_param()),
        mode=EXACT,
        forms=(direct, reflected),
        pole_guards=(lambda q, b, n: b["a"] != 0,),
    )


def _basic_4_2():
    def ratio_form(ctx, p, n):
        def term(k):
            return (
                p.z ** k
                * ctx.poch(1, -n, k)
                / ctx.poch(1 / p.a, -n, k)
            )

        return ctx.sum_range(0, n, term)

    def shifted_form(ctx, p, n):
        def term(k):
            return (
                p.z ** k
                * ctx.poch(1, n - k + 1, k)
                * p.a ** k
                / ctx.poch(p.a, n - k + 1, k)
            )

        return ctx.sum_range(0, n, term)

    def top_anchored_form(ctx, p, n):
        def term(k):
            return (
                p.z ** k
                * ctx.poch(1, 1, n)
                * ctx.poch(p.a, 1, n - k)
                * p.a ** k
                / (ctx.poch(1, 1, n - k) * ctx.poch(p.a, 1, n))
            )

        return ctx.sum_range(0, n, term)

    return Identity(
        id="BASIC-4-2",
        source="three faces of a reflected product ratio",
        params=(ParameterSpec("a"), ParameterSpec("z"), count_param()),
        mode=EXACT,
        forms=(ratio_form, shifted_form, top_anchored_form),
        pole_guards=(lambda q, b, n: b["a"] != 0,),
    )


def _corteel_lovejoy():
    def sum_side(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * p.c ** k
                * ctx.rev2(p.a, -1, -1, k)
                * ctx.Q(k * (k + 1) // 2)
                / ctx.poch(p.c, 1, k)
            )

        return ctx.sum_range(0, n, term)

    def product_side(ctx, p, n):
        return ctx.poch(-p.a * p.c, 1, n) / ctx.poch(p.c, 1, n)

    return Identity(
        id="CORTEEL-LOVEJOY",
        source="overpartition-weight summation",
        params=(ParameterSpec("a"), ParameterSpec("c"), count_param()),
        mode=EXACT,
        forms=(sum_side, product_side),
    )


def _van_hamme():
    def harmonic_form(ctx, p, n):
        return ctx.harmonic(n)

    def theta_form(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * (-1) ** (k - 1)
                * ctx.Q(k * (k + 1) // 2)
                / (1 - ctx.Q(k))
            )

        return ctx.sum_range(1, n, term)

    return Identity(
        id="VAN-HAMME",
        source="binomial form of the geometric harmonic sum",
        params=(count_param(),),
        mode=EXACT,
        forms=(harmonic_form, theta_form),
    )


def _guo_zhang():
    # generating-polynomial packaging over the excluded index
    def direct(ctx, p, n):
        def coefficient(m):
            def term(k):
                if k == m:
                    return ctx.zero()
                return (
                    ctx.qbin(n, k)
                    * ctx.rev(p.a, k)
                    * ctx.poch(p.a, 0, n - k)
                    / (1 - ctx.Q(k - m))
                )

            return ctx.sum_range(0, n, term)

        return ctx.sum_range(0, n, lambda m: p.z ** m * coefficient(m))

    def evaluated(ctx, p, n):
        def coefficient(m):
            def pole_part(k):
                return p.a * ctx.Q(k - m) / (1 - p.a * ctx.Q(k - m))

            def unit_part(k):
                if k == m:
                    return ctx.zero()
                return ctx.Q(k - m) / (1 - ctx.Q(k - m))

            weight = ctx.sum_range(0, n - 1, pole_part) - ctx.sum_range(
                0, n, unit_part
            )
            return (
                (-1) ** m
                * ctx.Q(m * (m + 1) // 2)
                * ctx.qbin(n, m)
                * ctx.poch(p.a, -m, n)
                * weight
            )

        return ctx.sum_range(0, n, lambda m: p.z ** m * coefficient(m))

    def away_from_pole_grid(q, b, n):
        if q is None:
            return True
        return all(b["a"] != q ** j for j in range(-(n - 1), n + 1))

    return Identity(
        id="GUO-ZHANG",
        source="excluded-index partial fraction expansion",
        params=(ParameterSpec("a"), ParameterSpec("z"), count_param()),
        mode=EXACT,
        forms=(direct, evaluated),
        pole_guards=(away_from_pole_grid,),
    )


def _hyper_tail_sum(ctx, p, n):
    """Infinite-product prefactor times the doubly indexed hypergeometric
    tail; appears verbatim in the last two weighted identities."""
    de = p.d * p.e
    front = (
        ctx.poch_inf(p.c / p.d, 0)
        * ctx.poch_inf(de, 1)
        * ctx.poch_inf(1 / p.e, 1)
        / (ctx.poch_inf(p.c, 1) * ctx.poch_inf(de, n + 1) * ctx.poch_inf(1, 1))
    )

    def outer(k):
        def inner(m):
            hyper = ctx.phi(
                [(p.e, 0), (de, n + m + 1)], [(de, k + m + 1)], (1 / p.e, k)
            )
            return (
                ctx.poch(p.d, 1, m)
                * ctx.poch(de, n + 1, m)
                * (p.c / p.d) ** m
                * ctx.Q(k * m)
                / (ctx.poch(de, k + 1, m) * ctx.poch(1, 1, m))
                * hyper
            )

        return (
            ctx.qbin(n, k)
            * p.e ** (k - 1)
            * p.d ** k
            * ctx.Q(k * (k + 1))
            / (ctx.poch(de, 1, k) * (1 - ctx.Q(k)))
            * ctx.sum_inf(inner, start=0)
        )

    return front * ctx.sum_range(1, n, outer)


def _descending_sum(ctx, p, n):
    """Terminating series with descending powers; the closed right side
    shared by the last two weighted identities."""
    de = p.d * p.e
    front = ctx.poch(de, 1, n) / ctx.poch(p.c, 1, n)

    def term(k):
        return (
            ctx.poch(1, -n, k)
            * ctx.poch(p.d / p.c, 0, k)
            * ctx.poch(p.e, 1, k - 1)
            * p.c ** k
            * ctx.Q((n + 1) * k)
            / (ctx.poch(de, 1, k) * ctx.poch(1, 1, k) * ctx.poch(1, 1, k - 1))
        )

    return front * ctx.sum_range(1, n, term)


def _alternating_head(ctx, p, n, weight):
    def term(k):
        return (
            ctx.qbin(n, k)
            * weight(k)
            * (-1) ** (k - 1)
            * ctx.rev2(p.d, p.c, -1, k)
            * ctx.rev(p.e, k - 1)
            * ctx.Q(k * (k + 1) // 2)
            / (ctx.poch(p.c, 1, k) * ctx.poch(1, 1, k - 1))
        )

    return ctx.sum_range(1, n, term)


def _lem_7_1():
    def harmonic_weighted(ctx, p, n):
        return _alternating_head(ctx, p, n, lambda k: ctx.harmonic(k))

    def hyper_side(ctx, p, n):
        return _hyper_tail_sum(ctx, p, n)

    return Identity(
        id="LEM-7-1",
        source="harmonic-weighted alternating sum as a hypergeometric tail",
        params=(ParameterSpec("c"), ParameterSpec("d"), ParameterSpec("e"), count_param()),
        mode=FORMAL,
        forms=(harmonic_weighted, hyper_side),
        pole_guards=(
            lambda q, b, n: b["d"] != 0,
            lambda q, b, n: b["e"] != 0,
        ),
    )


def _lem_7_2():
    def plain(ctx, p, n):
        return _alternating_head(ctx, p, n, lambda k: 1)

    def descending(ctx, p, n):
        return _descending_sum(ctx, p, n)

    return Identity(
        id="LEM-7-2",
        source="alternating sum as a terminating descending series",
        params=(ParameterSpec("c"), ParameterSpec("d"), ParameterSpec("e"), count_param()),
        mode=EXACT,
        forms=(plain, descending),
        pole_guards=(lambda q, b, n: b["c"] != 0,),
    )


def _thm_7_3():
    def index_weighted(ctx, p, n):
        return _alternating_head(ctx, p, n, lambda k: k) + _hyper_tail_sum(
            ctx, p, n
        )

    def closed(ctx, p, n):
        head = p.c / (p.c - p.d) * _descending_sum(ctx, p, n)
        front = ctx.poch(1 / p.e, 1, n - 1) / (
            ctx.poch(p.c, 1, n) * ctx.poch(1, 1, n - 1)
        )

        def term(k):
            hyper = ctx.phi(
                [(1, -(n - k)), (p.e, 0), (p.c * p.e, 1)],
                [(p.d * p.e, 1), (p.e, 1 - n)],
                (1, 1),
            )
            return (
                ctx.qbin(n, k)
                * ctx.poch(p.c / p.d, 1, k)
                * ctx.poch(p.d * p.e, 1, n - k)
                * p.d ** k
                * ctx.Q(k)
                * p.e ** (k - 1)
                / (1 - ctx.Q(k))
                * hyper
            )

        return head + front * ctx.sum_range(1, n, term)

    return Identity(
        id="THM-7-3",
        source="index-weighted alternating sum with hypergeometric closure",
        params=(ParameterSpec("c"), ParameterSpec("d"), ParameterSpec("e"), count_param()),
        mode=FORMAL,
        forms=(index_weighted, closed),
        pole_guards=(
            lambda q, b, n: b["c"] != 0,
            lambda q, b, n: b["d"] != 0,
            lambda q, b, n: b["e"] != 0,
            lambda q, b, n: b["c"] != b["d"],
        ),
    )


def classic_identities():
    return (
        _qbinom_thm(),
        _heine(),
        _qgauss(),
        _phi32_iii9(),
        _phi32_iii12(),
        _fin_heine(),
        _fin_heine_cor(),
        _basic_4_1(),
        _basic_4_2(),
        _corteel_lovejoy(),
        _van_hamme(),
        _guo_zhang(),
        _lem_7_1(),
        _lem_7_2(),
        _thm_7_3(),
    )
