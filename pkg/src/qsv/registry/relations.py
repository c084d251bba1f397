"""Reduction edges, finite partners, and negative-control mutations.

Three tables drive the cross-identity layer:

* ``SPECIALIZATIONS``: pinning one parameter of a general identity must
  reproduce a listed special identity form by form, up to a declared
  scale factor.
* ``FINITE_PARTNERS``: each infinite-series identity with a finite
  analogue must agree with it numerically at a deep truncation.
* ``MUTATIONS``: five single-token corruptions that the verifier is
  required to catch at small depth.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

from .base import Identity
from .entries import _geom_gap

Rational = Fraction
SubstValue = Union[Rational, int, Callable[[Mapping[str, Rational], Optional[Rational]], Rational]]
ScaleFn = Callable[[object, object, Optional[int]], object]


@dataclass(frozen=True)
class Specialization:
    """One reduction edge: general pinned by ``subst`` equals scale * special.

    ``special`` is None for boundary self-checks, where pinning the
    parameter must leave the general identity's own forms in agreement.
    ``scale`` is applied to the special side; None means 1.  ``order``
    overrides the series depth for formal-mode edges.
    """

    general: str
    special: Optional[str]
    subst: Mapping[str, SubstValue]
    mode: str
    scale: Optional[Union[Rational, int, ScaleFn]] = None
    order: Optional[int] = None


def _times_q(name: str) -> Callable[[Mapping[str, Rational], Optional[Rational]], Rational]:
    def value(binding: Mapping[str, Rational], q: Optional[Rational]) -> Rational:
        if q is None:
            raise ValueError("substitution needs a point value for q")
        return binding[name] * q

    return value


def _one_minus(name: str) -> ScaleFn:
    def scale(ctx, p, n):
        return 1 - getattr(p, name)

    return scale


def _poch_ad(ctx, p, n):
    return ctx.poch(p.a * p.d, 0, n)


ZERO = Fraction(0)
ONE = Fraction(1)

SPECIALIZATIONS: Sequence[Specialization] = (
    Specialization("THM-2-1", "BEM", {"e": ONE}, "analytic"),
    Specialization("THM-2-5", "DP", {"e": ONE}, "exact", scale=_poch_ad),
    Specialization("COR-2-2", "BEM-COR", {"e": ONE}, "formal"),
    Specialization("COR-2-2", "COR-2-3", {"d": ZERO}, "formal"),
    Specialization("COR-2-3", "ANDREWS-QS", {"e": ONE}, "formal"),
    Specialization("GARVAN-GEN", "GARVAN", {"d": ONE}, "formal"),
    Specialization("COR-2-4", "DM", {"e": ONE}, "analytic"),
    Specialization("BEM", "DM", {"d": ONE}, "analytic", scale=_one_minus("c")),
    Specialization("DP", "DEMS", {"d": ONE}, "exact", scale=_one_minus("c")),
    Specialization("THM-2-5", "COR-2-8", {"d": ONE}, "exact", scale=_one_minus("c")),
    Specialization("THM-2-5", "COR-2-6", {"a": ZERO, "b": _times_q("z")}, "exact"),
    Specialization("COR-2-6", "COR-2-7", {"d": ZERO}, "exact"),
    Specialization("THM-2-9", "DEMS-GARVAN", {"d": ONE}, "exact"),
    Specialization("GEN-E1", "E1", {"e": ZERO}, "analytic"),
    Specialization("GEN-E2", "E2", {"e": ZERO}, "analytic"),
    Specialization("GEN-E3", "E3", {"e": ZERO}, "analytic"),
    Specialization("GEN-E4", "E4", {"e": ZERO}, "formal", scale=-1, order=30),
    Specialization("GEN-E5", "E5", {"e": ZERO}, "analytic"),
    Specialization("FIN-E1", "DP-FIN-E1", {"e": ZERO}, "exact"),
    Specialization("FIN-E2", "DP-FIN-E2", {"e": ZERO}, "exact", scale=-1),
    Specialization("FIN-E3", None, {"e": ZERO}, "exact"),
    Specialization("FIN-E4", "DP-FIN-E4", {"e": ZERO}, "exact", scale=-1),
    Specialization("FIN-E5", None, {"e": ZERO}, "exact"),
    Specialization("THM-7-3", "DP-PHI21", {"e": ONE}, "formal"),
)

# Infinite identity id -> finite analogue id.  None: no finite analogue
# exists in the catalog, so coherence has nothing to compare against.
FINITE_PARTNERS: Mapping[str, Optional[str]] = {
    "E1": "DP-FIN-E1",
    "E2": "DP-FIN-E2",
    "E4": "DP-FIN-E4",
    "KLUYVER": "VAN-HAMME",
    "UCHIMURA-TRIPLE": None,
    "DM-COR": "DEMS-COR",
    "GARVAN": "DEMS-GARVAN",
    "ANDREWS-QS": None,
    "COR-2-2": "COR-2-6",
    "COR-2-3": "COR-2-7",
    "GARVAN-GEN": "THM-2-9",
    "GEN-E4": "FIN-E4",
    "DP-PHI21": None,
    "THM-7-3": None,
    "LEM-7-1": None,
    "QBINOM-THM": None,
}


@dataclass(frozen=True)
class Mutation:
    """A single-token corruption of one catalog identity."""

    name: str
    target: str
    kind: str
    form_index: int
    build: Callable[[Identity], Identity]


def _replace_form(identity: Identity, index: int, form) -> Identity:
    forms = list(identity.forms)
    forms[index] = form
    return dataclasses.replace(identity, forms=tuple(forms))


def _mutate_kluyver(identity: Identity) -> Identity:
    # exponent k(k+1)/2 -> k(k+3)/2
    def theta_sum(ctx, p, n):
        def term(k):
            return (
                (-1) ** (k - 1)
                * ctx.Q(k * (k + 3) // 2)
                / ((1 - ctx.Q(k)) * ctx.poch(1, 1, k))
            )

        return ctx.sum_inf(term)

    return _replace_form(identity, 0, theta_sum)


def _mutate_garvan(identity: Identity) -> Identity:
    # sign (-1)^(k-1) -> (-1)^k
    def odd_theta(ctx, p, n):
        def term(k):
            return (
                (-1) ** k
                * p.z ** k
                * ctx.Q(k * k)
                / (ctx.poch(p.z, 1, k, 2) * (1 - p.z * ctx.Q(2 * k)))
            )

        return ctx.sum_inf(term)

    return _replace_form(identity, 0, odd_theta)


def _mutate_dems(identity: Identity) -> Identity:
    # reversed-factor index k-1 -> k
    def weighted_side(ctx, p, n):
        def term(k):
            return (
                ctx.qbin(n, k)
                * ctx.poch(p.c, 1, n - k)
                * ctx.rev2(p.c, p.b, -1, k)
                * ctx.poch(1, 1, k)
                / (ctx.poch(p.c, 1, n) * ctx.poch(p.b, 0, k - 1))
                * _geom_gap(ctx, p.a, p.b, k - 1)
            )

        return ctx.sum_range(1, n, term)

    return _replace_form(identity, 1, weighted_side)


def _mutate_fin_e5(identity: Identity) -> Identity:
    # exponent k(k+1)/2 -> k(k-1)/2
    def theta_sum(ctx, p, n):
        def term(k):
            finite = ctx.poch(1, 1, k - 1)
            return (
                ctx.qbin(n, k)
                * (-1) ** k
                * finite
                * finite
                * p.a ** k
                * ctx.Q(k * (k - 1) // 2)
                / (ctx.poch(p.a, 0, k) * ctx.rev(p.e, k))
            )

        return ctx.sum_range(1, n, term)

    return _replace_form(identity, 0, theta_sum)


def _mutate_qbinom(identity: Identity) -> Identity:
    # product offset 1 -> 2
    def product_side(ctx, p, n):
        return ctx.poch_inf(p.a * p.z, 2) / ctx.poch_inf(p.z, 1)

    return _replace_form(identity, 1, product_side)


MUTATIONS: Sequence[Mutation] = (
    Mutation("kluyver-exponent", "KLUYVER", "exponent-shift", 0, _mutate_kluyver),
    Mutation("garvan-sign", "GARVAN", "sign-flip", 0, _mutate_garvan),
    Mutation("dems-index", "DEMS", "index-shift", 1, _mutate_dems),
    Mutation("fin-e5-exponent", "FIN-E5", "exponent-shift", 0, _mutate_fin_e5),
    Mutation("qbinom-index", "QBINOM-THM", "index-shift", 1, _mutate_qbinom),
)
