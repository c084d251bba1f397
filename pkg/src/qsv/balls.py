"""Rational ball arithmetic for the analytic verification mode.

A Ball is a midpoint with an error radius, both exact rationals, plus a
flag recording whether any heuristic (non-certified) tail estimate went
into the radius.  Radii from certified bounds keep the flag off.
"""

from fractions import Fraction

from .errors import RatioNotContracting

_ZERO = Fraction(0)


class Ball:
    __slots__ = ("mid", "rad", "heuristic")

    def __init__(self, mid, rad=0, heuristic=False):
        self.mid = Fraction(mid)
        self.rad = Fraction(rad)
        if self.rad < 0:
            raise ValueError("negative radius")
        self.heuristic = bool(heuristic)

    def __repr__(self):
        tag = "~" if self.heuristic else ""
        return f"Ball({self.mid} +/- {self.rad}{tag})"

    def __eq__(self, other):
        return (
            isinstance(other, Ball)
            and self.mid == other.mid
            and self.rad == other.rad
            and self.heuristic == other.heuristic
        )

    def upper_abs(self):
        return abs(self.mid) + self.rad

    def lower_abs(self):
        """Largest r with |x| >= r guaranteed for all x in the ball."""
        lo = abs(self.mid) - self.rad
        return lo if lo > 0 else _ZERO

    def contains_zero(self):
        return abs(self.mid) <= self.rad

    @staticmethod
    def _coerce(x):
        if isinstance(x, Ball):
            return x
        if isinstance(x, (int, Fraction)):
            return Ball(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Ball(self.mid + o.mid, self.rad + o.rad, self.heuristic or o.heuristic)

    __radd__ = __add__

    def __neg__(self):
        return Ball(-self.mid, self.rad, self.heuristic)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Ball(self.mid - o.mid, self.rad + o.rad, self.heuristic or o.heuristic)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        rad = (
            abs(self.mid) * o.rad
            + abs(o.mid) * self.rad
            + self.rad * o.rad
        )
        return Ball(self.mid * o.mid, rad, self.heuristic or o.heuristic)

    __rmul__ = __mul__

    def inverse(self):
        """1/x over the ball; requires the ball to exclude zero."""
        m, r = self.mid, self.rad
        if abs(m) <= r:
            raise ZeroDivisionError("ball straddles zero")
        # |1/x - 1/m| <= r / (|m| (|m| - r)) for |x - m| <= r
        new_rad = r / (abs(m) * (abs(m) - r))
        return Ball(1 / m, new_rad, self.heuristic)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Ball(1)
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def sum_with_ratio_tail(terms, target, guard=400, zero_run=10):
    """Sum Balls from an iterator until a heuristic ratio tail falls below target.

    The tail bound is rho-hat = max ratio of consecutive nonzero |mid| over
    the last ten terms, with a safety factor of 4:
    tail = |t_M| * rho / (1 - rho) * 4.  This is a heuristic, so the flag on
    the result is always set unless the iterator is exhausted (finite sum) or
    the terms become exactly zero for ``zero_run`` consecutive indices.

    Raises RatioNotContracting when rho-hat >= 1 persists at the guard index.
    """
    target = Fraction(target)
    total = Ball(0)
    recent = []  # last few |mid| values, for the ratio window
    zeros = 0
    last_abs = None
    count = 0
    for t in terms:
        total = total + t
        count += 1
        a = abs(t.mid)
        if a == 0 and t.rad == 0:
            zeros += 1
            if zeros >= zero_run:
                return total, _ZERO, False
            continue
        zeros = 0
        if last_abs is not None and last_abs != 0:
            recent.append(a / last_abs)
            if len(recent) > 10:
                recent.pop(0)
        last_abs = a
        if len(recent) >= 3:
            rho = max(recent)
            if rho < 1:
                tail = a * rho / (1 - rho) * 4
                if tail <= target:
                    return total, tail, True
            elif count >= guard:
                raise RatioNotContracting(
                    f"term ratio {float(rho):.3g} >= 1 after {count} terms"
                )
        if count >= 4 * guard:
            raise RatioNotContracting(
                f"tail still above target after {count} terms"
            )
    return total, _ZERO, False
