"""Truncated Laurent series over exact rationals.

A series is stored as a dense coefficient window starting at ``min_exp``
together with ``valid_through``, the largest exponent whose coefficient is
known to be correct.  Every operation propagates ``valid_through`` so that
a comparison through order K can refuse to run when either side is known
to a smaller order.
"""

from fractions import Fraction
from math import inf

from gmpy2 import mpq

from .errors import NonformalInfiniteProduct, ZeroLeadingCoefficient

INFINITY = inf

# mpq is exact and hashes/compares interchangeably with Fraction
_ZERO = mpq(0)
_ONE = mpq(1)
_SCALARS = (int, Fraction, mpq)


class Monomial:
    """coeff * q**exp with exact rational coeff."""

    __slots__ = ("coeff", "exp")

    def __init__(self, coeff, exp=0):
        coeff = Fraction(coeff)
        if coeff == 0:
            exp = 0
        self.coeff = coeff
        self.exp = int(exp)

    def __eq__(self, other):
        return (
            isinstance(other, Monomial)
            and self.coeff == other.coeff
            and self.exp == other.exp
        )

    def __hash__(self):
        return hash((self.coeff, self.exp))

    def __repr__(self):
        return f"Monomial({self.coeff!r}, {self.exp})"

    def value_at(self, q):
        return self.coeff * Fraction(q) ** self.exp


class LaurentSeries:
    __slots__ = ("min_exp", "coeffs", "valid_through")

    def __init__(self, coeffs, min_exp, valid_through):
        """Normalise: strip zero fringes, clamp the window to valid_through."""
        coeffs = [mpq(c) for c in coeffs]
        min_exp = int(min_exp)
        # drop anything beyond the trusted window
        keep = valid_through - min_exp + 1
        if keep < len(coeffs):
            del coeffs[max(keep, 0):]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            min_exp += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            min_exp = 0
        self.coeffs = tuple(coeffs)
        self.min_exp = min_exp
        self.valid_through = valid_through

    # -- inspection ------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    @property
    def max_exp(self):
        """Largest exponent carrying a nonzero stored coefficient."""
        return self.min_exp + len(self.coeffs) - 1

    def coeff(self, e):
        """Coefficient of q**e; e must not exceed valid_through."""
        if e > self.valid_through:
            raise ValueError(
                f"coefficient of q^{e} requested but series only valid through "
                f"q^{self.valid_through}"
            )
        i = e - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return _ZERO

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.min_exp == other.min_exp
            and self.coeffs == other.coeffs
            and self.valid_through == other.valid_through
        )

    def __hash__(self):
        return hash((self.min_exp, self.coeffs, self.valid_through))

    def __repr__(self):
        if not self.coeffs:
            return f"<0 +O(q^{self.valid_through + 1})>"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.min_exp + i
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*q")
            else:
                parts.append(f"{c}*q^{e}")
            if len(parts) > 8:
                parts.append("...")
                break
        body = " + ".join(parts)
        return f"<{body} +O(q^{self.valid_through + 1})>"

    # -- construction helpers -------------------------------------------

    @staticmethod
    def zero(valid_through):
        return LaurentSeries((), 0, valid_through)

    @staticmethod
    def constant(c, valid_through):
        return LaurentSeries((mpq(c),), 0, valid_through)

    @staticmethod
    def monomial(c, e, valid_through):
        return LaurentSeries((mpq(c),), e, valid_through)

    # -- arithmetic ------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, _SCALARS):
            return None  # scalar path
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, _SCALARS):
            return self._add_scalar(mpq(other))
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        v = min(self.valid_through, other.valid_through)
        if self.is_zero():
            return LaurentSeries(other.coeffs, other.min_exp, v)
        if other.is_zero():
            return LaurentSeries(self.coeffs, self.min_exp, v)
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        out = [_ZERO] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.min_exp + i - lo] = c
        for i, c in enumerate(other.coeffs):
            out[other.min_exp + i - lo] += c
        return LaurentSeries(out, lo, v)

    __radd__ = __add__

    def _add_scalar(self, c):
        if c == 0:
            return self
        if self.is_zero():
            return LaurentSeries((c,), 0, self.valid_through)
        lo = min(self.min_exp, 0)
        hi = max(self.max_exp, 0)
        out = [_ZERO] * (hi - lo + 1)
        for i, cc in enumerate(self.coeffs):
            out[self.min_exp + i - lo] = cc
        out[-lo] += c
        return LaurentSeries(out, lo, self.valid_through)

    def __neg__(self):
        return LaurentSeries(
            tuple(-c for c in self.coeffs), self.min_exp, self.valid_through
        )

    def __sub__(self, other):
        if isinstance(other, _SCALARS):
            return self._add_scalar(mpq(-other))
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            c = mpq(other)
            if c == 0:
                return LaurentSeries.zero(self.valid_through)
            return LaurentSeries(
                tuple(c * a for a in self.coeffs), self.min_exp, self.valid_through
            )
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            # product window per the mul rule, using 0 as the absent valuation
            va = self.valid_through + (other.min_exp if not other.is_zero() else 0)
            vb = other.valid_through + (self.min_exp if not self.is_zero() else 0)
            return LaurentSeries.zero(min(va, vb))
        v = min(
            self.valid_through + other.min_exp,
            other.valid_through + self.min_exp,
        )
        lo = self.min_exp + other.min_exp
        n = v - lo + 1
        if n <= 0:
            return LaurentSeries.zero(v)
        out = [_ZERO] * n
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            top = min(len(b), n - i)
            for j in range(top):
                cb = b[j]
                if cb != 0:
                    out[i + j] += ca * cb
        return LaurentSeries(out, lo, v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self * (_ONE / mpq(other))
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def invert(self):
        """Multiplicative inverse; window shrinks by twice the valuation."""
        if self.is_zero():
            raise ZeroLeadingCoefficient("cannot invert the zero series")
        m = self.min_exp
        v = self.valid_through - 2 * m
        lead = self.coeffs[0]
        n = v + m + 1  # number of coefficients of the unit part we need
        a = self.coeffs
        # b = inverse of the unit part sum a[i] q^i / lead
        out = [_ZERO] * max(n, 0)
        if n > 0:
            out[0] = _ONE / lead
            for i in range(1, n):
                s = _ZERO
                for j in range(1, min(i, len(a) - 1) + 1):
                    if a[j] != 0:
                        s += a[j] * out[i - j]
                out[i] = -s / lead
        return LaurentSeries(out, -m, v)

    def shift(self, e):
        """Multiply by q**e."""
        return LaurentSeries(
            self.coeffs, self.min_exp + e, self.valid_through + e
        )

    def rebase(self, r):
        """Substitute q -> q**r for integer r >= 1."""
        if r == 1:
            return self
        if self.is_zero():
            return LaurentSeries.zero(r * self.valid_through)
        out = [_ZERO] * ((len(self.coeffs) - 1) * r + 1)
        for i, c in enumerate(self.coeffs):
            out[i * r] = c
        return LaurentSeries(out, r * self.min_exp, r * self.valid_through)

    def truncate(self, k):
        """Restrict the trusted window to exactly k; requires k <= valid_through."""
        if k > self.valid_through:
            raise ValueError(
                f"cannot truncate to q^{k}: series only valid through "
                f"q^{self.valid_through}"
            )
        return LaurentSeries(self.coeffs, self.min_exp, k)

    def mul_one_minus(self, c, m):
        """Multiply by (1 - c*q**m) in O(window) time; m may be negative."""
        c = mpq(c)
        if c == 0:
            return self
        return self - self.shift(m) * c

    def div_one_minus(self, c, m):
        """Divide by (1 - c*q**m); exact two-term factor, m may be negative.

        The factor is known exactly, so the window only moves by the factor's
        valuation (0 for m > 0, m for m < 0).
        """
        c = mpq(c)
        if c == 0:
            return self
        if m == 0:
            if c == 1:
                raise ZeroLeadingCoefficient("division by exact zero (1 - c) with c = 1")
            return self * (_ONE / (_ONE - c))
        if self.is_zero():
            return LaurentSeries.zero(self.valid_through - min(m, 0))
        if m > 0:
            # b_i = a_i + c * b_{i-m}, from the low end up
            lo = self.min_exp
            v = self.valid_through
            n = v - lo + 1
            out = [_ZERO] * n
            for i in range(n):
                e = lo + i
                s = self.coeffs[e - self.min_exp] if e <= self.max_exp else _ZERO
                if i >= m:
                    s += c * out[i - m]
                out[i] = s
        else:
            # 1 - c q^m = (-c q^m)(1 - (1/c) q^{-m}); leading term has exponent m
            g = self.shift(-m) * (-_ONE / c)
            return g.div_one_minus(_ONE / c, -m)
        return LaurentSeries(out, lo, v)

    def eval_at(self, q):
        """Exact value of the stored window at a rational point."""
        q = Fraction(q)
        s = _ZERO
        for i, c in enumerate(self.coeffs):
            if c != 0:
                s += c * q ** (self.min_exp + i)
        return s


def poch_series(x, n, k, r=1):
    """(x; q**r)_n as a series through order k, x a Monomial, n int or INFINITY.

    Infinite products need x.exp >= 0 so that all but finitely many factors
    are 1 within the window.
    """
    if not isinstance(x, Monomial):
        x = Monomial(x)
    out = LaurentSeries.constant(1, k)
    if x.coeff == 0 or n == 0:
        return out
    if n is INFINITY or n == INFINITY:
        if x.exp < 0:
            raise NonformalInfiniteProduct(
                f"(x; q)_oo with x of exponent {x.exp} < 0 is not a formal series"
            )
        j = 0
        while x.exp + r * j <= k:
            out = out.mul_one_minus(x.coeff, x.exp + r * j)
            j += 1
        return out
    for j in range(int(n)):
        out = out.mul_one_minus(x.coeff, x.exp + r * j)
    return out


def poch_point(x, n, q):
    """(x; q)_n evaluated exactly at rational q, finite n >= 0."""
    x = Fraction(x)
    q = Fraction(q)
    out = _ONE
    p = _ONE
    for _ in range(n):
        out *= _ONE - x * p
        p *= q
    return out


def poch_reversed(x, n, k):
    """prod_{j=1..n} (x - q**j) as a series through order k.

    Equals (q/x; q)_n * x**n continued across x = 0.
    """
    return poch_reversed2(x, 1, 0, n, k)


def poch_reversed2(x, c, e, n, k, r=1):
    """prod_{j=1..n} (x - c * q**(e + r*j)) as a series through order k.

    Equals (c q^(e+r) / x; q^r)_n * x**n continued across x = 0.
    """
    x = mpq(x)
    c = mpq(c)
    out = LaurentSeries.constant(1, k)
    for j in range(1, n + 1):
        out = out * x - out.shift(e + r * j) * c
    return out


def qbinom(big_n, n, r, k):
    """Gaussian binomial [big_n choose n] in base q**r, through order k."""
    if n < 0 or n > big_n:
        return LaurentSeries.zero(k)
    n = min(n, big_n - n)
    out = LaurentSeries.constant(1, k)
    for j in range(1, n + 1):
        out = out.mul_one_minus(_ONE, r * (big_n - n + j))
        out = out.div_one_minus(_ONE, r * j)
    return out


def lambert(x, k):
    """Sum over m of (sum of x**d over divisors d of m) q**m, through q**k."""
    x = mpq(x)
    acc = [_ZERO] * (k + 1)
    xp = _ONE
    for d in range(1, k + 1):
        xp *= x
        if xp == 0:
            break
        for m in range(d, k + 1, d):
            acc[m] += xp
    return LaurentSeries(acc, 0, k)


def weighted_lambert(x, k):
    """Like lambert but each divisor d contributes d * x**d."""
    x = mpq(x)
    acc = [_ZERO] * (k + 1)
    xp = _ONE
    for d in range(1, k + 1):
        xp *= x
        if xp == 0:
            break
        w = d * xp
        for m in range(d, k + 1, d):
            acc[m] += w
    return LaurentSeries(acc, 0, k)
