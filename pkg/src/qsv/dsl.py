"""Small expression language over the series and point evaluators.

Surface syntax: rational arithmetic over ``q``, free parameter names, and
the builtin calls

    poch(x, n)     pochinf(x)     pochrev(x, n)
    qbin(N, n)     qbin2(N, n)    lambert(x)      wlambert(x)
    phi(upper...; lower...; arg)  bigsum(index, lo, hi, body)

``poch``/``pochinf`` and every ``phi`` slot take q-monomial arguments
written like ``r*q^k``; exponents may be integers or a bound sum index.
Expressions evaluate either as truncated series or exactly at a rational
point; point evaluation of the infinite constructs returns a midpoint
with a reported tail radius.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .balls import Ball
from .context import AnalyticCtx, ExactCtx, SeriesCtx
from .errors import ExprSyntaxError, UnboundParameter

Exponent = Union[int, str]


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class SymQ:
    pass


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: Exponent


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple["Node", ...]


@dataclass(frozen=True)
class Phi:
    upper: Tuple["Node", ...]
    lower: Tuple["Node", ...]
    argument: "Node"


@dataclass(frozen=True)
class BigSum:
    index: str
    lo: int
    hi: int
    body: "Node"


Node = Union[Lit, SymQ, Param, Neg, BinOp, Pow, Call, Phi, BigSum]

_SIMPLE_CALLS = {
    "poch": 2,
    "pochinf": 1,
    "pochrev": 2,
    "qbin": 2,
    "qbin2": 2,
    "lambert": 1,
    "wlambert": 1,
}
BUILTINS = tuple(sorted(_SIMPLE_CALLS)) + ("bigsum", "phi")

_OPS = set("+-*/^(),;")


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError(
            f"unexpected character {ch!r} at offset {i}", i,
            expected=("expression",),
        )
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            self.fail((kind,))
        self.pos += 1
        return tok

    def at(self, kind):
        return self.tokens[self.pos][0] == kind

    def fail(self, expected):
        tok = self.tokens[self.pos]
        shown = tok[1] or "end of input"
        raise ExprSyntaxError(
            f"expected {' or '.join(expected)} at offset {tok[2]},"
            f" found {shown!r}",
            tok[2],
            expected=expected,
        )

    def parse(self):
        node = self.expr()
        if not self.at("end"):
            self.fail(("+", "-", "*", "/", "end of input"))
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take(self.peek()[0])[0]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.at("^"):
            self.take("^")
            node = Pow(node, self.exponent())
        return node

    def exponent(self):
        sign = 1
        if self.at("-"):
            self.take("-")
            sign = -1
        if self.at("int"):
            return sign * int(self.take("int")[1])
        if sign == 1 and self.at("name"):
            return self.take("name")[1]
        self.fail(("integer", "index name"))

    def atom(self):
        kind, value, offset = self.peek()
        if kind == "int":
            self.take("int")
            return Lit(int(value))
        if kind == "-":
            self.take("-")
            return Neg(self.atom())
        if kind == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        if kind == "name":
            self.take("name")
            if value == "q":
                if self.at("("):
                    self.fail(("builtin name",))
                return SymQ()
            if self.at("("):
                return self.call(value, offset)
            return Param(value)
        self.fail(("number", "q", "name", "(", "-"))

    def call(self, name, offset):
        if name == "phi":
            return self.phi_call()
        if name == "bigsum":
            return self.bigsum_call(offset)
        arity = _SIMPLE_CALLS.get(name)
        if arity is None:
            raise ExprSyntaxError(
                f"unknown function {name!r} at offset {offset}", offset,
                expected=BUILTINS,
            )
        self.take("(")
        starts = [self.peek()[2]]
        args = [self.expr()]
        while self.at(","):
            self.take(",")
            starts.append(self.peek()[2])
            args.append(self.expr())
        self.take(")")
        if len(args) != arity:
            raise ExprSyntaxError(
                f"{name} takes {arity} argument(s), got {len(args)}"
                f" at offset {offset}",
                offset,
                expected=(f"{arity} arguments",),
            )
        if name in ("poch", "pochinf"):
            self.require_monomial(args[0], starts[0])
        return Call(name, tuple(args))

    def phi_call(self):
        self.take("(")
        upper = self.group()
        self.take(";")
        lower = self.group()
        self.take(";")
        start = self.peek()[2]
        argument = self.expr()
        self.require_monomial(argument, start)
        self.take(")")
        return Phi(tuple(upper), tuple(lower), argument)

    def group(self):
        if self.at(";"):
            return []
        start = self.peek()[2]
        items = [self.expr()]
        self.require_monomial(items[0], start)
        while self.at(","):
            self.take(",")
            start = self.peek()[2]
            items.append(self.expr())
            self.require_monomial(items[-1], start)
        return items

    def require_monomial(self, node, offset):
        if not _monomial_shape(node):
            raise ExprSyntaxError(
                f"argument at offset {offset} must be a q-monomial"
                " like r*q^k",
                offset,
                expected=("r*q^k",),
            )

    def bigsum_call(self, offset):
        self.take("(")
        index = self.take("name")[1]
        self.take(",")
        lo = int(self.take("int")[1])
        self.take(",")
        hi = int(self.take("int")[1])
        self.take(",")
        body = self.expr()
        self.take(")")
        if lo > hi + 1:
            raise ExprSyntaxError(
                f"empty-past-empty sum bounds {lo}..{hi} at offset {offset}",
                offset,
                expected=("lo <= hi+1",),
            )
        return BigSum(index, lo, hi, body)


def parse_expression(text):
    """Parse the surface syntax into an AST."""
    return _Parser(text).parse()


def _monomial_shape(node):
    if isinstance(node, (SymQ, Lit, Param)):
        return True
    if isinstance(node, (Neg, Pow)):
        inner = node.operand if isinstance(node, Neg) else node.base
        return _monomial_shape(inner)
    if isinstance(node, BinOp) and node.op in ("*", "/"):
        return _monomial_shape(node.left) and _monomial_shape(node.right)
    return False


def _resolve_exponent(exponent, binding):
    if isinstance(exponent, int):
        return exponent
    value = binding.get(exponent)
    if value is None:
        raise UnboundParameter(f"exponent index {exponent!r} is unbound")
    value = Fraction(value)
    if value.denominator != 1:
        raise UnboundParameter(
            f"exponent index {exponent!r} must be an integer"
        )
    return int(value)


def _as_monomial(node, binding):
    """Structural r*q^k reading of a node; scalar part exact."""
    if isinstance(node, SymQ):
        return Fraction(1), 1
    if isinstance(node, Lit):
        return Fraction(node.value), 0
    if isinstance(node, Param):
        if node.name not in binding:
            raise UnboundParameter(f"parameter {node.name!r} is unbound")
        return Fraction(binding[node.name]), 0
    if isinstance(node, Neg):
        c, e = _as_monomial(node.operand, binding)
        return -c, e
    if isinstance(node, Pow):
        c, e = _as_monomial(node.base, binding)
        k = _resolve_exponent(node.exponent, binding)
        if c == 0 and k < 0:
            raise ZeroDivisionError("zero monomial to a negative power")
        return c**k, e * k
    if isinstance(node, BinOp) and node.op in ("*", "/"):
        ca, ea = _as_monomial(node.left, binding)
        cb, eb = _as_monomial(node.right, binding)
        if node.op == "*":
            return ca * cb, ea + eb
        return ca / cb, ea - eb
    raise ExprSyntaxError(
        "argument must be a q-monomial like r*q^k", 0,
        expected=("r*q^k",),
    )


def _scalar(value, what):
    if isinstance(value, Fraction):
        return value
    raise ExprSyntaxError(
        f"{what} must evaluate to a rational, not a series", 0,
        expected=("rational",),
    )


def _index(value, what):
    value = _scalar(value, what)
    if value.denominator != 1 or value < 0:
        raise ExprSyntaxError(
            f"{what} must be a nonnegative integer", 0,
            expected=("nonnegative integer",),
        )
    return int(value)


def _eval(node, ctx, binding):
    if isinstance(node, Lit):
        return Fraction(node.value)
    if isinstance(node, SymQ):
        return ctx.Q(1)
    if isinstance(node, Param):
        if node.name not in binding:
            raise UnboundParameter(f"parameter {node.name!r} is unbound")
        return Fraction(binding[node.name])
    if isinstance(node, Neg):
        return -_eval(node.operand, ctx, binding)
    if isinstance(node, BinOp):
        left = _eval(node.left, ctx, binding)
        right = _eval(node.right, ctx, binding)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return left / right
    if isinstance(node, Pow):
        base = _eval(node.base, ctx, binding)
        k = _resolve_exponent(node.exponent, binding)
        return _power(base, k, ctx)
    if isinstance(node, Phi):
        upper = [_as_monomial(x, binding) for x in node.upper]
        lower = [_as_monomial(x, binding) for x in node.lower]
        argument = _as_monomial(node.argument, binding)
        return ctx.phi(upper, lower, argument)
    if isinstance(node, BigSum):
        total = ctx.zero()
        inner = dict(binding)
        for j in range(node.lo, node.hi + 1):
            inner[node.index] = Fraction(j)
            total = total + _eval(node.body, ctx, inner)
        return total
    if isinstance(node, Call):
        return _call(node, ctx, binding)
    raise TypeError(f"unknown node {node!r}")


def _power(base, k, ctx):
    # series and ball values have no ** operator
    if isinstance(base, Fraction):
        return base**k
    if k < 0:
        return ctx.one() / _power(base, -k, ctx)
    out = ctx.one()
    while k:
        if k & 1:
            out = out * base
        base = base * base
        k >>= 1
    return out


def _call(node, ctx, binding):
    name = node.name
    if name == "poch":
        c, e = _as_monomial(node.args[0], binding)
        n = _index(_eval(node.args[1], ctx, binding), "poch length")
        return ctx.poch(c, e, n)
    if name == "pochinf":
        c, e = _as_monomial(node.args[0], binding)
        return ctx.poch_inf(c, e)
    if name == "pochrev":
        x = _scalar(_eval(node.args[0], ctx, binding), "pochrev argument")
        n = _index(_eval(node.args[1], ctx, binding), "pochrev length")
        return ctx.rev(x, n)
    if name in ("qbin", "qbin2"):
        big = _index(_eval(node.args[0], ctx, binding), "qbin upper index")
        low = _index(_eval(node.args[1], ctx, binding), "qbin lower index")
        return ctx.qbin(big, low, 2 if name == "qbin2" else 1)
    if name == "lambert":
        x = _scalar(_eval(node.args[0], ctx, binding), "lambert argument")
        return ctx.lambert(x)
    if name == "wlambert":
        x = _scalar(_eval(node.args[0], ctx, binding), "wlambert argument")
        return ctx.wlambert(x)
    raise TypeError(f"unknown call {name!r}")


def eval_expression(ast, *, order=None, point=None, binding=None):
    """Evaluate in series mode (through q^order) or at a rational point.

    Point mode returns an exact rational, or a Ball when an infinite
    construct contributes a bounded tail.
    """
    if (order is None) == (point is None):
        raise ValueError("choose exactly one of order= or point=")
    binding = {k: Fraction(v) for k, v in (binding or {}).items()}
    if order is not None:
        ctx = SeriesCtx(int(order))
    else:
        point = Fraction(point)
        if 0 < point < 1:
            ctx = AnalyticCtx(point)
        else:
            # only finite constructs make sense out here
            ctx = ExactCtx(point)
    value = _eval(ast, ctx, binding)
    if order is not None:
        if not hasattr(value, "valid_through"):
            value = ctx.one() * value
        if value.valid_through > order:
            value = value.truncate(order)
    return value


_ATOMIC = (Lit, SymQ, Param, Call, Phi, BigSum, Neg)


def _render(node, level):
    # levels: 1 expr, 2 term, 3 factor; parenthesize below the context
    if isinstance(node, Lit):
        return str(node.value)
    if isinstance(node, SymQ):
        return "q"
    if isinstance(node, Param):
        return node.name
    if isinstance(node, Neg):
        operand = node.operand
        if isinstance(operand, _ATOMIC):
            return "-" + _render(operand, 3)
        return f"-({_render(operand, 1)})"
    if isinstance(node, Pow):
        base = node.base
        if isinstance(base, _ATOMIC):
            text = _render(base, 3)
        else:
            text = f"({_render(base, 1)})"
        return f"{text}^{node.exponent}"
    if isinstance(node, BinOp):
        if node.op in ("+", "-"):
            left = _render(node.left, 1)
            right = _render(node.right, 2)
            if isinstance(node.right, BinOp) and node.right.op in ("+", "-"):
                right = f"({_render(node.right, 1)})"
            text = f"{left} {node.op} {right}"
            return f"({text})" if level > 1 else text
        left = _render(node.left, 2)
        right = _render(node.right, 3)
        if isinstance(node.right, BinOp):
            right = f"({_render(node.right, 1)})"
        text = f"{left}{node.op}{right}"
        return f"({text})" if level > 2 else text
    if isinstance(node, Call):
        args = ", ".join(_render(a, 1) for a in node.args)
        return f"{node.name}({args})"
    if isinstance(node, Phi):
        upper = ", ".join(_render(a, 1) for a in node.upper)
        lower = ", ".join(_render(a, 1) for a in node.lower)
        return f"phi({upper}; {lower}; {_render(node.argument, 1)})"
    if isinstance(node, BigSum):
        return (
            f"bigsum({node.index}, {node.lo}, {node.hi},"
            f" {_render(node.body, 1)})"
        )
    raise TypeError(f"unknown node {node!r}")


def pretty(ast):
    """Canonical rendering; reparses to an identical AST."""
    return _render(ast, 1)
