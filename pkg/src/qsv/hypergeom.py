"""Basic hypergeometric sums in series and point modes.

A PhiSpec holds the data of an (s+1)-phi-s sum: upper and lower parameter
monomials in q, the base exponent r (the base is q**r), and the argument
monomial.  Terms are

    t_n = prod_u (u; q^r)_n * arg^n / (prod_l (l; q^r)_n * (q^r; q^r)_n)

and both evaluation modes generate them through the shared ratio

    t_{n+1} / t_n = arg * prod_u (1 - u q^{r n}) / (prod_l (1 - l q^{r n}) * (1 - q^{r(n+1)})).
"""

from fractions import Fraction

from .balls import Ball, sum_with_ratio_tail
from .errors import NonconvergentFormal, PoleInLowerParameter
from .series import LaurentSeries, Monomial

_ONE = Fraction(1)


class PhiSpec:
    __slots__ = ("upper", "lower", "base_exp", "argument")

    def __init__(self, upper, lower, base_exp, argument):
        self.upper = tuple(upper)
        self.lower = tuple(lower)
        self.base_exp = int(base_exp)
        self.argument = argument
        if self.base_exp < 1:
            raise ValueError("base exponent must be >= 1")
        if len(self.upper) != len(self.lower) + 1:
            raise ValueError("need exactly one more upper parameter than lower")
        for m in (*self.upper, *self.lower, self.argument):
            if not isinstance(m, Monomial):
                raise TypeError("parameters and argument must be Monomials")

    def termination_index(self):
        """Smallest N with all terms beyond n = N identically zero, else None.

        Only an upper monomial equal to a nonpositive power of the base
        forces termination.
        """
        r = self.base_exp
        best = None
        for m in self.upper:
            if m.coeff == 1 and m.exp <= 0 and m.exp % r == 0:
                n = -m.exp // r
                if best is None or n < best:
                    best = n
        return best

    def _check_lower_poles(self, stop):
        """A lower factor that vanishes identically must lie past the last term."""
        r = self.base_exp
        for m in self.lower:
            if m.coeff == 1 and m.exp <= 0 and m.exp % r == 0:
                k = -m.exp // r
                if stop is None or k < stop:
                    raise PoleInLowerParameter(
                        f"lower parameter q^{m.exp} vanishes at factor index {k}"
                    )


def phi_series(spec, k):
    """Evaluate the sum as a formal series through order k."""
    n_stop = spec.termination_index()
    spec._check_lower_poles(n_stop)
    r = spec.base_exp
    arg = spec.argument
    if arg.coeff == 0:
        return LaurentSeries.constant(1, k)
    if n_stop is None:
        if arg.exp < 1:
            raise NonconvergentFormal(
                "non-terminating sum with argument exponent < 1"
            )
        for m in (*spec.upper, *spec.lower):
            if m.exp < 0:
                raise NonconvergentFormal(
                    "non-terminating sum with a negative-exponent parameter"
                )
    total = LaurentSeries.constant(1, k)
    t = LaurentSeries.constant(1, k)
    n = 0
    guard = 4 * k + 8
    while True:
        if n_stop is not None and n >= n_stop:
            break
        if n_stop is None and (t.is_zero() or t.min_exp > k):
            break
        for m in spec.upper:
            t = t.mul_one_minus(m.coeff, m.exp + r * n)
        for m in spec.lower:
            t = t.div_one_minus(m.coeff, m.exp + r * n)
        t = t.div_one_minus(_ONE, r * (n + 1))
        t = t.shift(arg.exp) * arg.coeff
        total = total + t
        n += 1
        if n > guard:
            raise NonconvergentFormal(f"no closure after {n} terms at order {k}")
    return total.truncate(k)


def _point_terms(spec, q):
    """Yield exact term values t_0, t_1, ... at rational q."""
    r = spec.base_exp
    arg_val = spec.argument.value_at(q)
    qr = q**r
    t = _ONE
    n = 0
    yield t
    while True:
        qrn = qr**n
        num = arg_val
        for m in spec.upper:
            num *= _ONE - m.coeff * q**m.exp * qrn
        den = _ONE - qr ** (n + 1)
        for m in spec.lower:
            den *= _ONE - m.coeff * q**m.exp * qrn
        t = t * num / den
        yield t
        n += 1


def phi_point(spec, q, tail_target=Fraction(1, 10**20), guard=400):
    """Evaluate at rational q.

    Returns (value, tail_bound, heuristic).  Terminating sums are exact with
    zero tail; otherwise the tail comes from the ratio heuristic.
    """
    q = Fraction(q)
    n_stop = spec.termination_index()
    spec._check_lower_poles(n_stop)
    if spec.argument.coeff == 0:
        return _ONE, Fraction(0), False
    gen = _point_terms(spec, q)
    if n_stop is not None:
        total = Fraction(0)
        for _ in range(n_stop + 1):
            total += next(gen)
        return total, Fraction(0), False
    balls = (Ball(t) for t in gen)
    total, tail, heuristic = sum_with_ratio_tail(balls, tail_target, guard)
    return total.mid, tail, heuristic
