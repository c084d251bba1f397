"""Evaluation contexts: one identity form, three kinds of value.

Identity forms are closures written against a context object.  The context
decides what kind of value flows through the arithmetic:

* SeriesCtx   -- truncated Laurent series in q (formal mode)
* ExactCtx    -- exact rationals at a fixed rational q (exact mode)
* AnalyticCtx -- exact finite parts plus tail-bounded balls (analytic mode)

All three expose the same method set, so every form is written once.
Parameters bound to rational numbers pass through as plain Fractions; only
q-dependent quantities take mode-specific types.  Finite constructs stay
exact in every mode; infinite products carry certified tail radii, infinite
sums carry the heuristic ratio tail with the ball's heuristic flag set.
"""

from fractions import Fraction

from .balls import Ball, sum_with_ratio_tail
from .errors import ModeMismatch, NonconvergentFormal
from .hypergeom import PhiSpec, phi_point, phi_series
from .series import (
    INFINITY,
    LaurentSeries,
    Monomial,
    lambert,
    poch_series,
    qbinom,
    weighted_lambert,
)

_ONE = Fraction(1)
_ZERO = Fraction(0)


def _monomial(p):
    if isinstance(p, Monomial):
        return p
    c, e = p
    return Monomial(c, e)


def _phi_spec(upper, lower, arg, r):
    return PhiSpec(
        [_monomial(p) for p in upper],
        [_monomial(p) for p in lower],
        r,
        _monomial(arg),
    )


class _CtxBase:
    def sum_range(self, lo, hi, f):
        total = self.zero()
        for n in range(lo, hi + 1):
            total = total + f(n)
        return total

    def rev(self, x, n):
        """prod_{j=1..n} (x - q^j)."""
        return self.rev2(x, 1, 0, n)


class SeriesCtx(_CtxBase):
    """Formal mode: values are Laurent series in q through a fixed order."""

    mode = "formal"

    def __init__(self, order):
        self.order = int(order)
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        self._poch = {}
        self._rev = {}
        self._harm = None
        self._revharm = {}

    def zero(self):
        return LaurentSeries.zero(self.order)

    def one(self):
        return LaurentSeries.constant(1, self.order)

    def Q(self, e):
        # exact monomial: inflate the window so tall powers survive division
        e = int(e)
        return LaurentSeries.monomial(1, e, self.order + abs(e))

    def poch(self, c, e, n, r=1):
        """(c q^e; q^r)_n."""
        if n < 0:
            raise ValueError("negative product length")
        key = (Fraction(c), int(e), int(r))
        chain = self._poch.setdefault(key, [self.one()])
        while len(chain) <= n:
            j = len(chain) - 1
            chain.append(chain[-1].mul_one_minus(key[0], key[1] + key[2] * j))
        return chain[n]

    def poch_inf(self, c, e, r=1):
        """(c q^e; q^r)_inf."""
        return poch_series(Monomial(c, e), INFINITY, self.order, r)

    def rev2(self, x, c, e, n, r=1):
        """prod_{j=1..n} (x - c q^(e + r j))."""
        if n < 0:
            raise ValueError("negative product length")
        key = (Fraction(x), Fraction(c), int(e), int(r))
        if key[0] == 0:
            # exact monomial (-c)^n q^(e n + r n(n+1)/2); window inflated so
            # inversion still covers the full order
            if key[1] == 0 and n > 0:
                return self.zero()
            exp = key[2] * n + key[3] * (n * (n + 1) // 2)
            return LaurentSeries.monomial(
                (-key[1]) ** n, exp, self.order + 2 * abs(exp)
            )
        chain = self._rev.setdefault(key, [self.one()])
        while len(chain) <= n:
            j = len(chain)
            prev = chain[-1]
            chain.append(prev * key[0] - prev.shift(key[2] + key[3] * j) * key[1])
        return chain[n]

    def qbin(self, big_n, n, r=1):
        return qbinom(big_n, n, r, self.order)

    def harmonic(self, n):
        """sum_{k=1..n} q^k/(1 - q^k)."""
        if self._harm is None:
            self._harm = [self.zero()]
        while len(self._harm) <= n:
            k = len(self._harm)
            self._harm.append(self._harm[-1] + self.Q(k).div_one_minus(_ONE, k))
        return self._harm[n]

    def revharm(self, x, n):
        """sum_{k=1..n} q^k/(x - q^k)."""
        x = Fraction(x)
        chain = self._revharm.setdefault(x, [self.zero()])
        while len(chain) <= n:
            k = len(chain)
            if x == 0:
                term = self.one() * Fraction(-1)
            else:
                term = self.Q(k).div_one_minus(_ONE / x, k) * (_ONE / x)
            chain.append(chain[-1] + term)
        return chain[n]

    def lambert(self, x):
        """sum_{d>=1} x^d q^d/(1 - q^d), collected by powers of q."""
        return lambert(x, self.order)

    def wlambert(self, x):
        return weighted_lambert(x, self.order)

    def sum_inf(self, f, start=1):
        """Sum f(start), f(start+1), ... as long as terms touch the window.

        Stops after five consecutive terms entirely beyond the order; sums
        whose terms keep contributing raise NonconvergentFormal.
        """
        total = self.zero()
        quiet = 0
        n = start
        guard = start + 4 * self.order + 16
        while quiet < 5:
            t = f(n)
            if t.is_zero() or t.min_exp > self.order:
                quiet += 1
            else:
                quiet = 0
                total = total + t
            n += 1
            if n > guard:
                raise NonconvergentFormal(
                    f"terms still contribute at order {self.order} "
                    f"after {n - start} of them"
                )
        return total

    def phi(self, upper, lower, arg, r=1):
        return phi_series(_phi_spec(upper, lower, arg, r), self.order)


class ExactCtx(_CtxBase):
    """Exact mode: values are exact rationals at a fixed rational q."""

    mode = "exact"

    def __init__(self, q):
        self.q = Fraction(q)
        self._qpow = {}
        self._poch = {}
        self._rev = {}
        self._harm = None
        self._revharm = {}

    def zero(self):
        return _ZERO

    def one(self):
        return _ONE

    def Q(self, e):
        e = int(e)
        v = self._qpow.get(e)
        if v is None:
            v = self._qpow[e] = self.q**e
        return v

    def poch(self, c, e, n, r=1):
        if n < 0:
            raise ValueError("negative product length")
        key = (Fraction(c), int(e), int(r))
        chain = self._poch.setdefault(key, [_ONE])
        while len(chain) <= n:
            j = len(chain) - 1
            chain.append(chain[-1] * (1 - key[0] * self.Q(key[1] + key[2] * j)))
        return chain[n]

    def poch_inf(self, c, e, r=1):
        raise ModeMismatch("infinite product in exact mode")

    def rev2(self, x, c, e, n, r=1):
        if n < 0:
            raise ValueError("negative product length")
        key = (Fraction(x), Fraction(c), int(e), int(r))
        chain = self._rev.setdefault(key, [_ONE])
        while len(chain) <= n:
            j = len(chain)
            chain.append(chain[-1] * (key[0] - key[1] * self.Q(key[2] + key[3] * j)))
        return chain[n]

    def qbin(self, big_n, n, r=1):
        if n < 0 or n > big_n:
            return _ZERO
        n = min(n, big_n - n)
        num = den = _ONE
        for j in range(1, n + 1):
            num *= 1 - self.Q(r * (big_n - n + j))
            den *= 1 - self.Q(r * j)
        return num / den

    def harmonic(self, n):
        if self._harm is None:
            self._harm = [_ZERO]
        while len(self._harm) <= n:
            k = len(self._harm)
            qk = self.Q(k)
            self._harm.append(self._harm[-1] + qk / (1 - qk))
        return self._harm[n]

    def revharm(self, x, n):
        x = Fraction(x)
        chain = self._revharm.setdefault(x, [_ZERO])
        while len(chain) <= n:
            k = len(chain)
            qk = self.Q(k)
            chain.append(chain[-1] + qk / (x - qk))
        return chain[n]

    def lambert(self, x):
        raise ModeMismatch("infinite sum in exact mode")

    def wlambert(self, x):
        raise ModeMismatch("infinite sum in exact mode")

    def sum_inf(self, f, start=1):
        raise ModeMismatch("infinite sum in exact mode")

    def phi(self, upper, lower, arg, r=1):
        spec = _phi_spec(upper, lower, arg, r)
        if spec.argument.coeff != 0 and spec.termination_index() is None:
            raise ModeMismatch("non-terminating hypergeometric sum in exact mode")
        value, _, _ = phi_point(spec, self.q)
        return value


class AnalyticCtx(ExactCtx):
    """Analytic mode: exact finite parts, tail-bounded infinite constructs.

    Infinite products get certified radii; infinite sums get the ratio-tail
    heuristic and set the ball's heuristic flag.  Each infinite construct
    aims at a small fraction of the overall tolerance so that combined
    radii stay near it.
    """

    mode = "analytic"

    def __init__(self, q, tol=Fraction(1, 10**20)):
        super().__init__(q)
        if not 0 < self.q < 1:
            raise ValueError("analytic mode needs 0 < q < 1")
        self.tol = Fraction(tol)
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        self.leaf_target = self.tol / 1024

    def poch_inf(self, c, e, r=1):
        """(c q^e; q^r)_inf with a certified two-sided remainder bound.

        With T = sum_{j>=M} |c| q^(e+rj), the remaining factors multiply the
        partial product by something within T/(1-T) of 1.
        """
        c = Fraction(c)
        if c == 0:
            return _ONE
        q, target = self.q, self.leaf_target
        partial = _ONE
        j = 0
        while True:
            t_geo = abs(c) * q ** (e + r * j) / (1 - q**r)
            if t_geo < 1:
                delta = t_geo / (1 - t_geo)
                if abs(partial) * delta <= target:
                    return Ball(partial, abs(partial) * delta)
            partial *= 1 - c * q ** (e + r * j)
            j += 1

    def lambert(self, x):
        """sum_{d>=1} x^d q^d/(1 - q^d)."""
        x = Fraction(x)
        if x == 0:
            return _ZERO
        q = self.q

        def terms():
            d = 1
            while True:
                yield Ball(x**d * q**d / (1 - q**d))
                d += 1

        return self._tail_sum(terms())

    def wlambert(self, x):
        x = Fraction(x)
        if x == 0:
            return _ZERO
        q = self.q

        def terms():
            d = 1
            while True:
                yield Ball(d * x**d * q**d / (1 - q**d))
                d += 1

        return self._tail_sum(terms())

    def sum_inf(self, f, start=1):
        def terms():
            n = start
            while True:
                t = f(n)
                yield t if isinstance(t, Ball) else Ball(t)
                n += 1

        return self._tail_sum(terms())

    def _tail_sum(self, terms):
        total, tail, heuristic = sum_with_ratio_tail(terms, self.leaf_target)
        return Ball(total.mid, total.rad + tail, total.heuristic or heuristic)

    def phi(self, upper, lower, arg, r=1):
        spec = _phi_spec(upper, lower, arg, r)
        value, tail, heuristic = phi_point(spec, self.q, tail_target=self.leaf_target)
        if tail == 0 and not heuristic:
            return value
        return Ball(value, tail, heuristic)
