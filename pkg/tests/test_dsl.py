"""Tests for the expression language: parsing, rendering, and evaluation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsv.balls import Ball
from qsv.dsl import (
    BigSum,
    BinOp,
    Call,
    Lit,
    Neg,
    Param,
    Phi,
    Pow,
    SymQ,
    eval_expression,
    parse_expression,
    pretty,
)
from qsv.errors import ExprSyntaxError, UnboundParameter

F = Fraction


def coeffs(series, through):
    out = {}
    for e, c in zip(
        range(series.min_exp, series.min_exp + len(series.coeffs)),
        series.coeffs,
    ):
        if c and e <= through:
            out[e] = c
    return out


def divisor_count(m):
    return sum(1 for d in range(1, m + 1) if m % d == 0)


def divisor_sum(m):
    return sum(d for d in range(1, m + 1) if m % d == 0)


class TestParsing:
    def test_pochinf_of_q(self):
        assert parse_expression("pochinf(q)") == Call("pochinf", (SymQ(),))

    def test_bigsum_with_binomial_body(self):
        ast = parse_expression("bigsum(n,1,4, qbin(4,n)*q^n)")
        body = BinOp("*", Call("qbin", (Lit(4), Param("n"))), Pow(SymQ(), "n"))
        assert ast == BigSum("n", 1, 4, body)

    def test_call_plus_literal(self):
        ast = parse_expression("lambert(1/2) + 3")
        half = BinOp("/", Lit(1), Lit(2))
        assert ast == BinOp("+", Call("lambert", (half,)), Lit(3))

    def test_precedence_of_product_over_sum(self):
        ast = parse_expression("1 + 2*q^3")
        assert ast == BinOp("+", Lit(1), BinOp("*", Lit(2), Pow(SymQ(), 3)))

    def test_subtraction_associates_left(self):
        ast = parse_expression("a - b - c")
        assert ast == BinOp(
            "-", BinOp("-", Param("a"), Param("b")), Param("c")
        )

    def test_unary_minus_sits_under_power(self):
        assert parse_expression("-q^2") == Pow(Neg(SymQ()), 2)

    def test_negative_and_symbolic_exponents(self):
        assert parse_expression("q^-3") == Pow(SymQ(), -3)
        assert parse_expression("z^n") == Pow(Param("z"), "n")

    def test_phi_groups(self):
        ast = parse_expression("phi(a*q, q; c*q^2; q)")
        assert isinstance(ast, Phi)
        assert len(ast.upper) == 2
        assert ast.lower == (BinOp("*", Param("c"), Pow(SymQ(), 2)),)
        assert ast.argument == SymQ()

    def test_phi_lower_group_may_be_empty(self):
        ast = parse_expression("phi(q; ; q)")
        assert ast.upper == (SymQ(),)
        assert ast.lower == ()

    def test_empty_sum_bounds_parse(self):
        # lo == hi + 1 is the empty sum, still legal
        ast = parse_expression("bigsum(k, 2, 1, q^k)")
        assert ast == BigSum("k", 2, 1, Pow(SymQ(), "k"))


class TestParseErrors:
    def test_unknown_function(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expression("frob(1)")
        assert info.value.offset == 0
        assert "poch" in info.value.expected

    def test_dangling_operator_points_at_end(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expression("1 + ")
        assert info.value.offset == 4

    def test_non_monomial_poch_argument(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expression("poch(a+b, 2)")
        assert info.value.offset == 5
        assert "r*q^k" in info.value.expected

    def test_non_monomial_phi_slot(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expression("phi(q; 1+q; q)")
        assert info.value.offset == 7

    def test_reversed_sum_bounds(self):
        with pytest.raises(ExprSyntaxError):
            parse_expression("bigsum(n, 3, 1, q)")

    def test_wrong_arity(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expression("poch(q)")
        assert "2 argument" in str(info.value)

    def test_q_is_not_callable(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expression("q(2)")
        assert info.value.offset == 1

    def test_unexpected_character(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expression("1 + $")
        assert info.value.offset == 4

    def test_trailing_input(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expression("1 2")
        assert info.value.offset == 2

    def test_parenthesized_exponent_rejected(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expression("q^(2)")
        assert "integer" in info.value.expected


class TestSeriesEval:
    def test_euler_product_opening(self):
        s = eval_expression(parse_expression("pochinf(q)"), order=5)
        assert coeffs(s, 5) == {0: F(1), 1: F(-1), 2: F(-1), 5: F(1)}

    def test_gaussian_binomial(self):
        s = eval_expression(parse_expression("qbin(4,2)"), order=4)
        assert coeffs(s, 4) == {0: F(1), 1: F(1), 2: F(2), 3: F(1), 4: F(1)}

    def test_lambert_counts_divisors(self):
        s = eval_expression(parse_expression("lambert(1)"), order=6)
        assert coeffs(s, 6) == {m: F(divisor_count(m)) for m in range(1, 7)}

    def test_weighted_lambert_sums_divisors(self):
        s = eval_expression(parse_expression("wlambert(1)"), order=8)
        assert coeffs(s, 8) == {m: F(divisor_sum(m)) for m in range(1, 9)}

    def test_bigsum_geometric(self):
        s = eval_expression(parse_expression("bigsum(n, 0, 4, q^n)"), order=6)
        assert coeffs(s, 6) == {e: F(1) for e in range(5)}

    def test_empty_bigsum_is_zero(self):
        s = eval_expression(parse_expression("bigsum(k, 1, 0, q^k)"), order=6)
        assert s.is_zero()

    def test_phi_geometric_special_case(self):
        s = eval_expression(parse_expression("phi(q; ; q)"), order=6)
        assert coeffs(s, 6) == {e: F(1) for e in range(7)}

    def test_scalar_promotes_to_series(self):
        s = eval_expression(parse_expression("3/4 - 1/4"), order=3)
        assert coeffs(s, 3) == {0: F(1, 2)}

    def test_binding_reaches_parameters(self):
        s = eval_expression(
            parse_expression("a*q + a^2*q^2"), order=4, binding={"a": F(1, 2)}
        )
        assert coeffs(s, 4) == {1: F(1, 2), 2: F(1, 4)}

    def test_negative_power_divides(self):
        s = eval_expression(parse_expression("q^2*(1-q)^-1"), order=5)
        assert coeffs(s, 5) == {e: F(1) for e in range(2, 6)}

    def test_unbound_parameter(self):
        with pytest.raises(UnboundParameter):
            eval_expression(parse_expression("a*q"), order=4)

    def test_symbolic_exponent_outside_sum_is_unbound(self):
        with pytest.raises(UnboundParameter):
            eval_expression(parse_expression("q^n"), order=4)


class TestPointEval:
    def test_finite_poch_is_exact(self):
        q, a = F(1, 5), F(1, 3)
        got = eval_expression(
            parse_expression("poch(a*q, 3)/(1 - a*q)"),
            point=q,
            binding={"a": a},
        )
        want = (1 - a * q**2) * (1 - a * q**3)
        assert got == want

    def test_scalar_point(self):
        assert eval_expression(parse_expression("3/4 - 1/4"), point=F(1, 2)) == F(1, 2)

    def test_pochinf_ball_contains_deep_partial_product(self):
        q = F(1, 5)
        got = eval_expression(parse_expression("pochinf(q)"), point=q)
        assert isinstance(got, Ball)
        partial = F(1)
        for j in range(1, 80):
            partial *= 1 - q**j
        # the partial product is itself within q^80-ish of the limit
        assert abs(got.mid - partial) <= got.rad + F(1, 10**50)
        assert got.rad < F(1, 10**20)

    def test_phi_geometric_point(self):
        q = F(1, 7)
        got = eval_expression(parse_expression("phi(q; ; q)"), point=q)
        assert abs(got.mid - F(7, 6)) <= got.rad

    def test_qbin_point_is_rational(self):
        got = eval_expression(parse_expression("qbin(4, 2)"), point=F(1, 2))
        # (1-q^3)(1-q^4)/((1-q)(1-q^2)) at q = 1/2
        assert got == F(35, 16)

    def test_mode_choice_is_exclusive(self):
        ast = parse_expression("q")
        with pytest.raises(ValueError):
            eval_expression(ast)
        with pytest.raises(ValueError):
            eval_expression(ast, order=4, point=F(1, 2))


ROUND_TRIP_CORPUS = [
    "1",
    "q",
    "a",
    "-q",
    "--a",
    "1/2",
    "22/7",
    "q^2",
    "q^-3",
    "z^n",
    "-a^2",
    "(-a)^2",
    "-a^2*b",
    "1 + q",
    "1 - q - q^2 + q^5",
    "a - (b - c)",
    "a - b - c",
    "a*b*c",
    "a/b/c",
    "a/(b/c)",
    "a*(b + c)",
    "(a + b)*(a - b)",
    "2*(a + b)^2/(1 - q)",
    "(1 - q)^-1",
    "1/(1 - a*q)",
    "poch(q, 3)",
    "poch(a*q, n)",
    "poch(-q^2, 4)",
    "pochinf(q)",
    "pochinf(a*q^2)",
    "pochinf(q/c)",
    "pochrev(e, 3)",
    "pochrev(1/2, n)",
    "qbin(4, 2)",
    "qbin(8, n)",
    "qbin2(6, 3)",
    "lambert(1)",
    "lambert(1/2) + 3",
    "lambert(a)*wlambert(b)",
    "wlambert(-1)",
    "phi(q; ; q)",
    "phi(a*q, q; c*q^2; q)",
    "phi(-q; q^2, q^3; a*q)",
    "phi(a; b*q; q^2)^2",
    "bigsum(n, 0, 4, q^n)",
    "bigsum(k, 2, 1, q^k)",
    "bigsum(n, 1, 4, qbin(4, n)*q^n)",
    "bigsum(j, 0, 3, bigsum(k, 0, 3, q^j*q^k))",
    "1 + bigsum(n, 1, 6, q^n/poch(q, n))",
    "phi(q; ; q) - bigsum(n, 0, 9, q^n)",
]


class TestRoundTrip:
    def test_corpus_has_fifty_expressions(self):
        assert len(ROUND_TRIP_CORPUS) == 50

    @pytest.mark.parametrize("source", ROUND_TRIP_CORPUS)
    def test_pretty_is_a_fixed_point(self, source):
        ast = parse_expression(source)
        rendered = pretty(ast)
        assert parse_expression(rendered) == ast
        assert pretty(parse_expression(rendered)) == rendered


_names = st.sampled_from(["a", "b", "c", "z", "e1"])
_indices = st.sampled_from(["n", "k", "j"])
_leaves = st.one_of(
    st.integers(0, 9).map(Lit),
    st.just(SymQ()),
    _names.map(Param),
)
_monomials = st.recursive(
    _leaves,
    lambda child: st.one_of(
        child.map(Neg),
        st.builds(Pow, child, st.integers(-4, 4)),
        st.builds(BinOp, st.sampled_from(["*", "/"]), child, child),
    ),
    max_leaves=4,
)


def _extend(child):
    mono_tuple = st.lists(_monomials, min_size=1, max_size=3).map(tuple)
    return st.one_of(
        child.map(Neg),
        st.builds(BinOp, st.sampled_from(["+", "-", "*", "/"]), child, child),
        st.builds(Pow, child, st.one_of(st.integers(-5, 5), _indices)),
        st.builds(lambda x, n: Call("poch", (x, n)), _monomials, child),
        _monomials.map(lambda x: Call("pochinf", (x,))),
        st.builds(lambda x, n: Call("pochrev", (x, n)), child, child),
        st.builds(
            lambda name, a, b: Call(name, (a, b)),
            st.sampled_from(["qbin", "qbin2"]),
            child,
            child,
        ),
        st.builds(
            lambda name, x: Call(name, (x,)),
            st.sampled_from(["lambert", "wlambert"]),
            child,
        ),
        st.builds(
            Phi,
            mono_tuple,
            st.lists(_monomials, max_size=2).map(tuple),
            _monomials,
        ),
        st.builds(
            lambda idx, lo, width, body: BigSum(idx, lo, max(lo + width, 0), body),
            _indices,
            st.integers(0, 3),
            st.integers(-1, 4),
            child,
        ),
    )


_expressions = st.recursive(_leaves, _extend, max_leaves=10)


class TestRoundTripProperty:
    @settings(max_examples=200, deadline=None)
    @given(_expressions)
    def test_render_then_parse_is_identity(self, ast):
        assert parse_expression(pretty(ast)) == ast
