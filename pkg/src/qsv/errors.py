"""Exception types shared across the package."""


class QsvError(Exception):
    """Base class for all errors raised by this package."""


class ZeroLeadingCoefficient(QsvError):
    """Inverting a series whose leading coefficient vanishes."""


class NonformalInfiniteProduct(QsvError):
    """Infinite product whose factors do not tend to 1 term by term."""


class NonconvergentFormal(QsvError):
    """Formal sum whose term valuations fail to grow."""


class PoleInLowerParameter(QsvError):
    """A lower Pochhammer factor vanishes identically before the series ends."""


class RatioNotContracting(QsvError):
    """Numeric tail estimation saw term ratios at or above 1 at the guard index."""


class PoleGuardViolation(QsvError):
    """A binding violates a registered pole guard."""


class ModeMismatch(QsvError):
    """An evaluation was requested in a mode the target does not support."""


class SamplingExhausted(QsvError):
    """Rejection sampling failed to find an admissible binding."""


class UnboundParameter(QsvError):
    """An expression references a parameter absent from the binding."""


class ExprSyntaxError(QsvError):
    """Parse failure; carries the byte offset and the expected token set."""

    def __init__(self, message, offset, expected=()):
        super().__init__(message)
        self.offset = offset
        self.expected = tuple(expected)
