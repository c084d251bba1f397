"""Registry core: identity records, parameter specs, and form evaluation.

Each identity stores two or more closed forms of the same quantity.  A form
is a callable ``f(ctx, p, n)`` where ``ctx`` is one of the evaluation
contexts, ``p`` carries the bound parameters as ``Fraction`` attributes, and
``n`` is the summation cutoff for finite identities (``None`` otherwise).
Writing forms against the context API makes one encoding serve series,
exact-point, and ball evaluation alike.
"""

from dataclasses import dataclass
from fractions import Fraction
from types import SimpleNamespace
from typing import Callable, Optional, Tuple

from ..context import AnalyticCtx, ExactCtx, SeriesCtx
from ..errors import ModeMismatch, PoleGuardViolation, UnboundParameter

EXACT = "exact"
FORMAL = "formal"
ANALYTIC = "analytic"
MODES = (EXACT, FORMAL, ANALYTIC)

FREE = "free-rational"
COUNT = "positive-integer-N"


@dataclass(frozen=True)
class ParameterSpec:
    """One declared symbol of an identity.

    ``analytic_bound`` maps the values drawn so far to a strict magnitude
    cap for this parameter; the sampler scales its draw to stay inside.
    """

    name: str
    kind: str = FREE
    analytic_bound: Optional[Callable] = None


@dataclass(frozen=True)
class Correction:
    """A documented deviation from a source transcription.

    ``literal_forms`` evaluates the uncorrected text; the suite checks it
    leaves a nonzero residual at n = 1 while the corrected forms agree.
    ``extra_params`` lists symbols the literal text uses that the corrected
    identity does not.
    """

    note: str
    literal_forms: Tuple[Callable, ...]
    extra_params: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Identity:
    id: str
    source: str
    params: Tuple[ParameterSpec, ...]
    mode: str
    forms: Tuple[Callable, ...]
    # guards take (q, binding, n); q is None when evaluating formally
    pole_guards: Tuple[Callable, ...] = ()
    corrections: Tuple[Correction, ...] = ()

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if len(self.forms) < 2:
            raise ValueError(f"{self.id}: an identity needs at least two forms")
        names = [p.name for p in self.params]
        if len(names) != len(set(names)):
            raise ValueError(f"{self.id}: duplicate parameter")

    @property
    def has_count(self) -> bool:
        return any(p.kind == COUNT for p in self.params)

    @property
    def free_params(self) -> Tuple[ParameterSpec, ...]:
        return tuple(p for p in self.params if p.kind == FREE)


def count_param() -> ParameterSpec:
    return ParameterSpec("N", kind=COUNT)


def bind_values(identity: Identity, binding) -> dict:
    """Normalize a binding to {name: Fraction} for the free parameters."""
    out = {}
    for spec in identity.free_params:
        if spec.name not in binding:
            raise UnboundParameter(
                f"{identity.id}: no value bound for {spec.name!r}"
            )
        out[spec.name] = Fraction(binding[spec.name])
    return out


def check_guards(identity: Identity, bound: dict, n, q) -> None:
    for guard in identity.pole_guards:
        if not guard(q, bound, n):
            raise PoleGuardViolation(
                f"{identity.id}: binding violates a pole guard"
            )


def context_for(identity: Identity, k=None, q=None):
    """Build the evaluation context matching the identity's mode."""
    if identity.mode == FORMAL:
        if k is None or q is not None:
            raise ModeMismatch(
                f"{identity.id} compares formal series; supply an order K"
            )
        return SeriesCtx(int(k))
    if q is None or k is not None:
        raise ModeMismatch(
            f"{identity.id} evaluates at a rational point; supply q"
        )
    q = Fraction(q)
    if identity.mode == EXACT:
        return ExactCtx(q)
    return AnalyticCtx(q)


def evaluate_form(identity: Identity, form_index: int, binding, n=None,
                  k=None, q=None):
    """Evaluate one form under a guarded binding.

    Formal identities take ``k`` and return a LaurentSeries; exact ones take
    ``q`` and return a Fraction; analytic ones take ``q`` and return a value
    carrying its tail radius.
    """
    if identity.has_count:
        if n is None:
            raise ValueError(f"{identity.id} needs a summation bound N")
        n = int(n)
        if n < 1:
            raise ValueError(f"{identity.id}: N must be positive")
    elif n is not None:
        raise ValueError(f"{identity.id} does not take N")
    ctx = context_for(identity, k=k, q=q)
    bound = bind_values(identity, binding)
    check_guards(identity, bound, n, None if identity.mode == FORMAL else Fraction(q))
    p = SimpleNamespace(**bound)
    return identity.forms[form_index](ctx, p, n)


def is_q_power(value: Fraction, q: Fraction, up_to=None) -> bool:
    """Whether value equals q^j for some j >= 1 (j <= up_to when given)."""
    if value <= 0 or q <= 0:
        return False
    power = q
    j = 1
    while power >= value if q < 1 else power <= value:
        if power == value:
            return up_to is None or j <= up_to
        if up_to is not None and j >= up_to:
            return False
        power *= q
        j += 1
    return False
