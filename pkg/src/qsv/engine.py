"""Verification engine: deterministic samplers, per-mode checkers, the
reduction-edge and finite-coherence runners, and the suite aggregator.

Bindings are drawn from a hash-keyed stream so that (seed, identity id,
index) always reproduces the same rationals, independent of evaluation
order or worker count.  Checks never tolerate approximation in the exact
and formal modes; the analytic mode certifies a two-sided enclosure and
only then asks that the enclosure be tight.
"""

import hashlib
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from types import SimpleNamespace
from typing import Mapping, Optional, Sequence, Tuple

from .balls import Ball
from .context import AnalyticCtx, ExactCtx, SeriesCtx
from .errors import (
    NonconvergentFormal,
    PoleGuardViolation,
    RatioNotContracting,
    SamplingExhausted,
)
from .registry import (
    ANALYTIC,
    EXACT,
    FORMAL,
    FINITE_PARTNERS,
    MUTATIONS,
    SPECIALIZATIONS,
    check_guards,
    lookup,
    registry,
)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"

ANALYTIC_TOL = Fraction(1, 10**20)
COHERENCE_TOL = Fraction(1, 10**15)
COHERENCE_Q = Fraction(1, 5)
COHERENCE_N = 40

# guards are pre-checked for every bound in this range before a binding
# is accepted; suite sweeps must stay inside it
_GUARD_BOUNDS = range(1, 9)

_DEFAULT_SAMPLES = {EXACT: 20, FORMAL: 10, ANALYTIC: 10}


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 1
    count: int = 10
    q_denominator_bound: int = 50
    param_denominator_bound: int = 40


@dataclass(frozen=True)
class VerificationReport:
    identity_id: str
    mode: str
    binding: Mapping[str, Fraction]
    n: Optional[int]
    status: str
    metric: str
    duration_ms: int
    heuristic_tail: bool = False


@dataclass(frozen=True)
class SuitePlan:
    """Everything a suite run depends on; picklable for worker processes."""

    seed: int = 1
    modes: Tuple[str, ...] = (EXACT, FORMAL, ANALYTIC)
    ids: Optional[Tuple[str, ...]] = None
    order: int = 40
    n_min: int = 1
    n_max: int = 6
    samples: Optional[int] = None
    q_denominator_bound: int = 50
    param_denominator_bound: int = 40
    mutations: Tuple[str, ...] = ()
    corrections: bool = True


def _rng(seed, tag, index, attempt):
    key = f"{seed}:{tag}:{index}:{attempt}".encode()
    word = int.from_bytes(hashlib.sha256(key).digest()[:8], "big")
    return random.Random(word)


def _draw_q(rng, bound):
    v = rng.randint(3, max(3, bound))
    u = rng.randint(1, max(1, v // 3))
    return Fraction(u, v)


def _draw_value(rng, bound):
    v = rng.randint(4, max(4, bound))
    u = rng.randint(1, max(1, v // 3))
    return Fraction(u, v) * rng.choice((1, -1))


def _draw_binding(identity, config, index, attempt, extra_params=(), tag=None):
    rng = _rng(config.seed, tag or identity.id, index, attempt)
    q = _draw_q(rng, config.q_denominator_bound)
    values = {}
    for spec in identity.free_params:
        value = _draw_value(rng, config.param_denominator_bound)
        if spec.analytic_bound is not None:
            cap = spec.analytic_bound(values)
            if cap is not None:
                value = value * min(Fraction(1), Fraction(3, 4) * Fraction(cap))
        values[spec.name] = value
    for name in extra_params:
        values[name] = _draw_value(rng, config.param_denominator_bound)
    return q, values


def _guards_pass(identity, params, q):
    bounds = _GUARD_BOUNDS if identity.has_count else (None,)
    try:
        for n in bounds:
            check_guards(identity, params, n, q)
    except PoleGuardViolation:
        return False
    return True


def sample_binding(identity, config, index, *, extra_check=None,
                   extra_params=(), tag=None):
    """Deterministic admissible binding for (seed, identity, index).

    Returns a map holding ``q`` plus every free parameter.  Analytic caps
    are applied by scaling the raw draw, guards are pre-checked for all
    bounds the suite may use, and rejected draws advance an attempt
    counter so the stream stays reproducible.
    """
    for attempt in range(1000):
        q, params = _draw_binding(
            identity, config, index, attempt, extra_params, tag
        )
        guard_q = None if identity.mode == FORMAL else q
        if not _guards_pass(identity, params, guard_q):
            continue
        if extra_check is not None and not extra_check(q, params):
            continue
        return {"q": q, **params}
    raise SamplingExhausted(
        f"{identity.id}: 1000 draws rejected at index {index}"
    )


def _split(binding):
    params = dict(binding)
    q = params.pop("q", None)
    return q, params


def _check_bound(identity, n):
    if identity.has_count:
        if n is None:
            raise ValueError(f"{identity.id} needs a summation bound N")
        if int(n) < 1:
            raise ValueError(f"{identity.id}: N must be positive")
    elif n is not None:
        raise ValueError(f"{identity.id} does not take N")


def _forms_at(identity, ctx, params, n, forms=None):
    p = SimpleNamespace(**params)
    return [f(ctx, p, n) for f in (identity.forms if forms is None else forms)]


def _as_ball(value):
    return value if isinstance(value, Ball) else Ball(value)


def _sci(x):
    return f"{float(x):.3e}"


def _elapsed(t0):
    return int((time.perf_counter() - t0) * 1000)


def verify_exact(identity, binding, n, *, ctx=None):
    """All forms evaluated as exact rationals; PASS means zero difference."""
    t0 = time.perf_counter()
    _check_bound(identity, n)
    q, params = _split(binding)
    ctx = ctx if ctx is not None else ExactCtx(q)
    try:
        check_guards(identity, params, n, q)
        values = _forms_at(identity, ctx, params, n)
    except PoleGuardViolation as err:
        return VerificationReport(
            identity.id, identity.mode, dict(binding), n,
            SKIPPED, f"pole-guard: {err}", _elapsed(t0),
        )
    delta = max(abs(v - values[0]) for v in values[1:])
    status = PASS if delta == 0 else FAIL
    return VerificationReport(
        identity.id, identity.mode, dict(binding), n,
        status, str(delta), _elapsed(t0),
    )


def verify_formal(identity, binding, k, n=None, *, ctx=None):
    """All forms expanded through q^k; PASS means identical coefficients."""
    t0 = time.perf_counter()
    _check_bound(identity, n)
    _, params = _split(binding)
    ctx = ctx if ctx is not None else SeriesCtx(k)
    try:
        check_guards(identity, params, n, None)
        series = _forms_at(identity, ctx, params, n)
    except PoleGuardViolation as err:
        return VerificationReport(
            identity.id, identity.mode, params, n,
            SKIPPED, f"pole-guard: {err}", _elapsed(t0),
        )
    except NonconvergentFormal as err:
        return VerificationReport(
            identity.id, identity.mode, params, n,
            FAIL, f"nonconvergent: {err}", _elapsed(t0),
        )
    deltas = [s - series[0] for s in series[1:]]
    short = [d for d in deltas if d.valid_through < k]
    if short:
        return VerificationReport(
            identity.id, identity.mode, params, n,
            FAIL, f"window stops at q^{min(d.valid_through for d in short)}",
            _elapsed(t0),
        )
    coeffs = [abs(c) for d in deltas for c in d.coeffs]
    delta = max(coeffs, default=Fraction(0))
    status = PASS if all(d.is_zero() for d in deltas) else FAIL
    return VerificationReport(
        identity.id, identity.mode, params, n,
        status, str(delta), _elapsed(t0),
    )


def verify_analytic(identity, binding, *, ctx=None):
    """Forms enclosed in balls; PASS means overlap within the tolerance."""
    t0 = time.perf_counter()
    _check_bound(identity, None)
    q, params = _split(binding)
    ctx = ctx if ctx is not None else AnalyticCtx(q)
    try:
        check_guards(identity, params, None, q)
        values = [_as_ball(v) for v in _forms_at(identity, ctx, params, None)]
    except PoleGuardViolation as err:
        return VerificationReport(
            identity.id, identity.mode, dict(binding), None,
            SKIPPED, f"pole-guard: {err}", _elapsed(t0),
        )
    except RatioNotContracting as err:
        return VerificationReport(
            identity.id, identity.mode, dict(binding), None,
            FAIL, f"ratio: {err}", _elapsed(t0),
        )
    deltas = [v - values[0] for v in values[1:]]
    delta = max(abs(d.mid) for d in deltas)
    tail = max(d.rad for d in deltas)
    enclosed = all(abs(d.mid) <= d.rad for d in deltas)
    tight = all(abs(d.mid) + d.rad <= ANALYTIC_TOL for d in deltas)
    return VerificationReport(
        identity.id, identity.mode, dict(binding), None,
        PASS if enclosed and tight else FAIL,
        f"{_sci(delta)};{_sci(tail)}", _elapsed(t0),
        heuristic_tail=any(v.heuristic for v in values),
    )


def _find_edge(general_id, special_id, subst_keys):
    for edge in SPECIALIZATIONS:
        if (
            edge.general == general_id
            and edge.special == special_id
            and set(edge.subst) == subst_keys
        ):
            return edge
    return None


def _compose(general, special_params, substitution, q):
    composed = {}
    for spec in general.free_params:
        name = spec.name
        if name in substitution:
            value = substitution[name]
            composed[name] = (
                value(special_params, q) if callable(value) else Fraction(value)
            )
        elif name in special_params:
            composed[name] = special_params[name]
        else:
            raise PoleGuardViolation(
                f"{general.id}: substitution leaves {name!r} unbound"
            )
    return composed


def _scale_value(scale, ctx, params, n):
    if scale is None:
        return Fraction(1)
    if callable(scale):
        return scale(ctx, SimpleNamespace(**params), n)
    return Fraction(scale)


def verify_specialization(general, special, substitution, *, config=None,
                          n_max=4, order=None, scale=None, mode=None):
    """Pinning parameters of the general identity must land on the special.

    ``special`` may be None (or the general itself): the check is then
    that the general identity keeps holding at the pinned boundary value.
    Scale and series depth default from the edge table when the pair is
    listed there.
    """
    t0 = time.perf_counter()
    config = config or SampleConfig()
    special_id = None if special is None or special is general else special.id
    edge = _find_edge(general.id, special_id, set(substitution))
    if edge is not None:
        scale = edge.scale if scale is None else scale
        order = edge.order if order is None else order
        mode = edge.mode if mode is None else mode
    target = special if special is not None else general
    mode = mode or target.mode
    order = order or 40
    bounds = (
        range(1, n_max + 1) if target.has_count and general.has_count
        else (None,)
    )
    compare = min(len(general.forms), len(target.forms))
    tag = f"{general.id}->{target.id}"

    def general_ok(q, special_params):
        try:
            composed = _compose(general, special_params, substitution, q)
        except (PoleGuardViolation, ValueError):
            return False
        guard_q = None if mode == FORMAL else q
        return _guards_pass(general, composed, guard_q)

    series_ctx = SeriesCtx(order) if mode == FORMAL else None
    worst = Fraction(0)
    worst_tail = Fraction(0)
    ok = True
    heuristic = False
    for index in range(config.count):
        binding = sample_binding(
            target, config, index, extra_check=general_ok, tag=tag
        )
        q, special_params = _split(binding)
        composed = _compose(general, special_params, substitution, q)
        if mode == FORMAL:
            ctx = series_ctx
        elif mode == ANALYTIC:
            ctx = AnalyticCtx(q)
        else:
            ctx = ExactCtx(q)
        for n in bounds:
            g_values = _forms_at(general, ctx, composed, n)
            if special is None or special is general:
                s_values = list(g_values)
                g_values = g_values[:1] * len(s_values)
            else:
                s_values = _forms_at(target, ctx, special_params, n)
            s = _scale_value(scale, ctx, composed, n)
            for i in range(compare):
                diff = g_values[i] - s_values[i] * s
                if mode == FORMAL:
                    coeffs = [abs(c) for c in diff.coeffs]
                    worst = max(worst, max(coeffs, default=Fraction(0)))
                    ok = ok and diff.is_zero() and diff.valid_through >= order
                elif mode == ANALYTIC:
                    ball = _as_ball(diff)
                    worst = max(worst, abs(ball.mid))
                    worst_tail = max(worst_tail, ball.rad)
                    heuristic = heuristic or ball.heuristic
                    ok = ok and abs(ball.mid) <= ball.rad
                    ok = ok and abs(ball.mid) + ball.rad <= ANALYTIC_TOL
                else:
                    worst = max(worst, abs(diff))
                    ok = ok and diff == 0
    if mode == ANALYTIC:
        metric = f"{_sci(worst)};{_sci(worst_tail)}"
    else:
        metric = str(worst)
    return VerificationReport(
        tag, mode, {}, None, PASS if ok else FAIL, metric, _elapsed(t0),
        heuristic_tail=heuristic,
    )


def verify_correction(identity, *, config=None):
    """One row per correction: corrected forms agree at the smallest bound
    while the literal transcription leaves a nonzero residual."""
    config = config or SampleConfig()
    rows = []
    for correction in identity.corrections:
        t0 = time.perf_counter()
        binding = sample_binding(
            identity, config, 0,
            extra_params=correction.extra_params,
            tag=f"{identity.id}#literal",
        )
        q, params = _split(binding)
        ctx = ExactCtx(q)
        corrected = _forms_at(identity, ctx, params, 1)
        corrected_delta = max(abs(v - corrected[0]) for v in corrected[1:])
        literal = _forms_at(
            identity, ctx, params, 1, forms=correction.literal_forms
        )
        residual = max(abs(v - literal[0]) for v in literal[1:])
        status = PASS if corrected_delta == 0 and residual != 0 else FAIL
        rows.append(
            VerificationReport(
                f"{identity.id}#literal", identity.mode, dict(binding), 1,
                status,
                f"corrected={corrected_delta};literal-residual={residual}",
                _elapsed(t0),
            )
        )
    return rows


def verify_coherence(formal_identity, partner, *, config=None,
                     q=COHERENCE_Q, n=COHERENCE_N, tol=COHERENCE_TOL):
    """Point values of an infinite identity against its finite analogue.

    The infinite side is enclosed at the fixed point; the finite side is
    evaluated exactly at a deep bound.  PASS means every compared form
    pair sits within the enclosure radius plus the stated tolerance.
    """
    t0 = time.perf_counter()
    config = config or SampleConfig()
    names = {spec.name for spec in formal_identity.free_params}
    missing = names - {spec.name for spec in partner.free_params}
    if missing:
        raise ValueError(
            f"{partner.id} does not bind {sorted(missing)} of"
            f" {formal_identity.id}"
        )
    tag = f"{formal_identity.id}~{partner.id}"

    def at_fixed_point(_, params):
        restricted = {k: v for k, v in params.items() if k in names}
        return _guards_pass(partner, params, q) and _guards_pass(
            formal_identity, restricted, q
        )

    binding = sample_binding(
        partner, config, 0, extra_check=at_fixed_point, tag=tag
    )
    _, params = _split(binding)
    restricted = {k: v for k, v in params.items() if k in names}
    infinite = [
        _as_ball(v)
        for v in _forms_at(
            formal_identity, AnalyticCtx(q), restricted, None
        )
    ]
    finite = _forms_at(partner, ExactCtx(q), params, n)
    compare = min(len(infinite), len(finite))
    delta = max(
        abs(infinite[i].mid - finite[i]) for i in range(compare)
    )
    tail = max(infinite[i].rad for i in range(compare))
    ok = all(
        abs(infinite[i].mid - finite[i]) <= infinite[i].rad + tol
        for i in range(compare)
    )
    return VerificationReport(
        tag, ANALYTIC, {"q": q, **params}, n,
        PASS if ok else FAIL, f"{_sci(delta)};{_sci(tail)}", _elapsed(t0),
        heuristic_tail=any(b.heuristic for b in infinite[:compare]),
    )


def _mutation_by_name(name):
    for mutation in MUTATIONS:
        if mutation.name == name:
            return mutation
    raise KeyError(name)


def _pool(plan):
    table = {ident.id: ident for ident in registry()}
    for name in plan.mutations:
        mutation = _mutation_by_name(name)
        table[mutation.target] = mutation.build(table[mutation.target])
    return table


def _selected(plan):
    table = _pool(plan)
    if plan.ids is not None:
        unknown = [name for name in plan.ids if name not in table]
        if unknown:
            raise KeyError(f"unknown identity ids: {unknown}")
    chosen = [
        ident
        for ident in table.values()
        if ident.mode in plan.modes
        and (plan.ids is None or ident.id in plan.ids)
    ]
    return sorted(chosen, key=lambda ident: ident.id)


def _samples_for(plan, mode):
    return plan.samples if plan.samples is not None else _DEFAULT_SAMPLES[mode]


def _config_for(plan, mode):
    return SampleConfig(
        plan.seed,
        _samples_for(plan, mode),
        plan.q_denominator_bound,
        plan.param_denominator_bound,
    )


def _item_rows(plan, identity_id, index):
    identity = _pool(plan)[identity_id]
    config = _config_for(plan, identity.mode)
    t0 = time.perf_counter()
    try:
        binding = sample_binding(identity, config, index)
    except SamplingExhausted as err:
        return [
            VerificationReport(
                identity.id, identity.mode, {}, None,
                SKIPPED, f"sampling-exhausted: {err}", _elapsed(t0),
            )
        ]
    sweep = range(plan.n_min, plan.n_max + 1)
    if identity.mode == EXACT:
        ctx = ExactCtx(binding["q"])
        return [verify_exact(identity, binding, n, ctx=ctx) for n in sweep]
    if identity.mode == FORMAL:
        ctx = SeriesCtx(plan.order)
        if identity.has_count:
            return [
                verify_formal(identity, binding, plan.order, n, ctx=ctx)
                for n in sweep
            ]
        return [verify_formal(identity, binding, plan.order, ctx=ctx)]
    return [verify_analytic(identity, binding)]


def _item_worker(args):
    return _item_rows(*args)


def run_suite(plan, workers=1):
    """Run every selected identity across its sampled bindings.

    Rows come back ordered by identity id, then sample index, then bound;
    correction rows follow at the end.  Failures are recorded, never
    raised.  Worker count never changes the row contents.
    """
    selected = _selected(plan)
    items = [
        (plan, ident.id, index)
        for ident in selected
        for index in range(_samples_for(plan, ident.mode))
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_item_worker, items, chunksize=4))
    else:
        chunks = [_item_rows(*item) for item in items]
    rows = [row for chunk in chunks for row in chunk]
    if plan.corrections:
        for ident in selected:
            if ident.corrections:
                rows.extend(
                    verify_correction(ident, config=_config_for(plan, ident.mode))
                )
    return tuple(rows)


def run_specializations(config=None, edges=SPECIALIZATIONS):
    """Verify every reduction edge; one aggregated row per edge."""
    rows = []
    for edge in edges:
        general = lookup(edge.general)
        special = lookup(edge.special) if edge.special else None
        rows.append(
            verify_specialization(
                general, special, edge.subst, config=config,
                order=edge.order, scale=edge.scale, mode=edge.mode,
            )
        )
    return tuple(rows)


def run_coherence(config=None, partners=None):
    """Check every infinite identity against its finite analogue."""
    table = FINITE_PARTNERS if partners is None else partners
    rows = []
    for formal_id, partner_id in table.items():
        if partner_id is None:
            continue
        rows.append(
            verify_coherence(
                lookup(formal_id), lookup(partner_id), config=config
            )
        )
    return tuple(rows)
