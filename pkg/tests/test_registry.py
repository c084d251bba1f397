"""Catalog tests: inventory shape, recorded low-order values, correction
records, and the cross-identity tables (reduction edges, finite partners,
negative-control mutations).

Low-order expectations are recomputed here from first principles: divisor
counts by trial division, partition counts by subset enumeration, and
bound-one sums reduced by hand to closed rational forms.
"""

from fractions import Fraction as F
from types import SimpleNamespace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsv.context import ExactCtx
from qsv.errors import ModeMismatch, PoleGuardViolation, UnboundParameter
from qsv.registry import (
    ANALYTIC,
    EXACT,
    FORMAL,
    FINITE_PARTNERS,
    MUTATIONS,
    SPECIALIZATIONS,
    evaluate_form,
    lookup,
    registry,
)

Q0 = F(1, 5)
POOL = (F(1, 3), F(-1, 4), F(2, 7), F(-2, 9), F(1, 6), F(3, 11))

CANONICAL_IDS = (
    "E1",
    "E2",
    "E4",
    "KLUYVER",
    "UCHIMURA-TRIPLE",
    "DM-COR",
    "GARVAN",
    "ANDREWS-QS",
    "COR-2-2",
    "COR-2-3",
    "GARVAN-GEN",
    "GEN-E4",
    "DP-PHI21",
    "THM-7-3",
    "LEM-7-1",
    "QBINOM-THM",
    "E3",
    "E5",
    "DM",
    "BEM",
    "THM-2-1",
    "COR-2-4",
    "GEN-E1",
    "GEN-E2",
    "GEN-E3",
    "GEN-E5",
    "HEINE",
    "QGAUSS",
    "PHI32-III9",
    "COR-6-4",
    "DEMS",
    "DEMS-COR",
    "DEMS-GARVAN",
    "DP",
    "THM-2-5",
    "COR-2-6",
    "COR-2-7",
    "COR-2-8",
    "THM-2-9",
    "FIN-E1",
    "FIN-E2",
    "FIN-E3",
    "FIN-E4",
    "FIN-E5",
    "LEM-6-1",
    "LEM-6-2",
    "COR-6-3",
    "COR-6-5",
    "LEM-7-2",
    "PHI32-III12",
    "FIN-HEINE",
    "FIN-HEINE-COR",
    "BASIC-4-1",
    "BASIC-4-2",
    "CORTEEL-LOVEJOY",
    "VAN-HAMME",
    "GUO-ZHANG",
)

REDUCTION_TARGETS = ("DP-FIN-E1", "DP-FIN-E2", "DP-FIN-E4", "BEM-COR")


def binding_for(ident, offset=0):
    """Deterministic guard-safe binding: pool values, capped draws halved."""
    values = {}
    for i, spec in enumerate(ident.free_params):
        base = POOL[(i + offset) % len(POOL)]
        if spec.analytic_bound is not None:
            cap = spec.analytic_bound(values)
            if cap is not None and abs(base) >= cap:
                base = cap / 2 if base > 0 else -cap / 2
        values[spec.name] = base
    return values


def coeff(series, e):
    i = e - series.min_exp
    if 0 <= i < len(series.coeffs):
        return series.coeffs[i]
    return F(0)


def divisor_count(m):
    return sum(1 for d in range(1, m + 1) if m % d == 0)


def distinct_part_counts(limit):
    """counts[m] = partitions of m into distinct parts, by subset sums."""
    tally = {0: 1}
    for part in range(1, limit + 1):
        for s in sorted(tally, reverse=True):
            t = s + part
            if t <= limit:
                tally[t] = tally.get(t, 0) + tally[s]
    return [tally.get(m, 0) for m in range(limit + 1)]


class TestInventory:
    def test_canonical_order(self):
        assert tuple(ident.id for ident in registry()) == CANONICAL_IDS

    def test_modes_are_grouped(self):
        modes = [ident.mode for ident in registry()]
        assert modes == [FORMAL] * 16 + [ANALYTIC] * 14 + [EXACT] * 27

    def test_every_identity_has_two_forms(self):
        for ident in registry():
            assert len(ident.forms) >= 2, ident.id

    def test_exact_identities_take_a_bound(self):
        for ident in registry():
            if ident.mode == EXACT:
                assert ident.has_count, ident.id

    def test_lookup_resolves_reduction_targets(self):
        catalog_ids = {ident.id for ident in registry()}
        for name in REDUCTION_TARGETS:
            assert lookup(name).id == name
            assert name not in catalog_ids

    def test_lookup_rejects_unknown_id(self):
        with pytest.raises(KeyError):
            lookup("NO-SUCH-IDENTITY")


class TestRecordedValues:
    def test_divisor_counts_at_low_order(self):
        ident = lookup("KLUYVER")
        for index in range(len(ident.forms)):
            got = evaluate_form(ident, index, {}, k=6)
            for m in range(1, 7):
                assert coeff(got, m) == divisor_count(m), (index, m)
            assert coeff(got, 0) == 0

    def test_distinct_part_counts(self):
        ident = lookup("E1")
        got = evaluate_form(ident, 0, {"a": 1, "b": 0}, k=8)
        want = distinct_part_counts(8)
        for m in range(9):
            assert coeff(got, m) == want[m], m

    def test_four_way_chain_collapses_at_bound_one(self):
        # every form reduces to q/(1-q) at n = 1, independent of d
        ident = lookup("COR-6-3")
        want = Q0 / (1 - Q0)
        for d in (F(2, 7), F(-3, 8)):
            for index in range(len(ident.forms)):
                assert evaluate_form(ident, index, {"d": d}, n=1, q=Q0) == want

    def test_five_way_chain_collapses_at_bound_one(self):
        # every form reduces to q^2/(1-q^3) at n = 1, independent of d
        ident = lookup("COR-6-5")
        want = Q0**2 / (1 - Q0**3)
        for d in (F(2, 7), F(-3, 8)):
            for index in range(len(ident.forms)):
                assert evaluate_form(ident, index, {"d": d}, n=1, q=Q0) == want

    def test_product_ratio_forms_at_bound_one(self):
        ident = lookup("DP-FIN-E1")
        a, b = F(1, 3), F(-1, 4)
        want = (1 + a * Q0) / (1 - b * Q0)
        for index in range(len(ident.forms)):
            got = evaluate_form(ident, index, {"a": a, "b": b}, n=1, q=Q0)
            assert got == want, index


class TestCorrections:
    def test_correction_inventory(self):
        carrying = [ident.id for ident in registry() if ident.corrections]
        assert carrying == ["DEMS-COR", "FIN-E4"]

    def test_denominator_length_correction(self):
        ident = lookup("DEMS-COR")
        z, c = F(2, 7), F(-1, 4)
        want = z * Q0 * (1 - Q0) / ((1 - c * Q0) * (1 - z * Q0))
        for index in range(len(ident.forms)):
            assert evaluate_form(ident, index, {"z": z, "c": c}, n=1, q=Q0) == want
        literal = ident.corrections[0].literal_forms[1]
        got = literal(ExactCtx(Q0), SimpleNamespace(z=z, c=c), 1)
        assert got == z * Q0 * (1 - Q0) / (1 - c * Q0)
        assert got != want

    def test_stray_symbol_correction(self):
        ident = lookup("FIN-E4")
        z, e = F(2, 7), F(-2, 9)
        want = z * Q0**2 / ((1 - z * Q0) * (e - Q0))
        for index in range(len(ident.forms)):
            assert evaluate_form(ident, index, {"z": z, "e": e}, n=1, q=Q0) == want
        correction = ident.corrections[0]
        assert correction.extra_params == ("a",)
        literal = correction.literal_forms[1]
        a = F(1, 3)
        got = literal(ExactCtx(Q0), SimpleNamespace(z=z, e=e, a=a), 1)
        assert got == a * Q0 * e / ((1 - z * Q0) * (e - Q0)) - z * Q0 / (1 - z * Q0)
        assert got != want


class TestEvaluateForm:
    def test_formal_identity_rejects_point_request(self):
        with pytest.raises(ModeMismatch):
            evaluate_form(lookup("KLUYVER"), 0, {}, q=Q0)

    def test_exact_identity_rejects_series_request(self):
        with pytest.raises(ModeMismatch):
            evaluate_form(lookup("COR-6-3"), 0, {"d": F(1, 3)}, n=1, k=10)

    def test_missing_parameter_is_reported(self):
        with pytest.raises(UnboundParameter):
            evaluate_form(lookup("E1"), 0, {"a": F(1, 3)}, k=6)

    def test_bound_is_required(self):
        with pytest.raises(ValueError):
            evaluate_form(lookup("COR-6-3"), 0, {"d": F(1, 3)}, q=Q0)

    def test_bound_must_be_positive(self):
        with pytest.raises(ValueError):
            evaluate_form(lookup("COR-6-3"), 0, {"d": F(1, 3)}, n=0, q=Q0)

    def test_bound_rejected_without_count(self):
        with pytest.raises(ValueError):
            evaluate_form(lookup("KLUYVER"), 0, {}, n=2, k=6)

    def test_pole_guard_fires_on_shifted_power(self):
        # e equal to a power of q sits on a removed pole
        with pytest.raises(PoleGuardViolation):
            evaluate_form(
                lookup("FIN-E3"),
                0,
                {"a": F(1, 3), "b": F(-1, 4), "e": Q0**2},
                n=2,
                q=Q0,
            )

    def test_pole_guard_fires_at_equal_parameters(self):
        with pytest.raises(PoleGuardViolation):
            evaluate_form(lookup("COR-6-5"), 0, {"d": Q0}, n=1, q=Q0)


class TestFormAgreement:
    def test_exact_forms_agree(self):
        for ident in registry():
            if ident.mode != EXACT:
                continue
            for offset in (0, 3):
                binding = binding_for(ident, offset)
                for n in (1, 2):
                    values = [
                        evaluate_form(ident, i, binding, n=n, q=Q0)
                        for i in range(len(ident.forms))
                    ]
                    for i, value in enumerate(values[1:], start=1):
                        assert value == values[0], (ident.id, offset, n, i)

    def test_formal_forms_agree(self):
        for ident in registry():
            if ident.mode != FORMAL:
                continue
            binding = binding_for(ident)
            bounds = (2,) if ident.has_count else (None,)
            for n in bounds:
                series = [
                    evaluate_form(ident, i, binding, n=n, k=12)
                    for i in range(len(ident.forms))
                ]
                for i, got in enumerate(series[1:], start=1):
                    assert (got - series[0]).is_zero(), (ident.id, i)

    def test_analytic_forms_overlap(self):
        for ident in registry():
            if ident.mode != ANALYTIC:
                continue
            binding = binding_for(ident)
            balls = [
                evaluate_form(ident, i, binding, q=Q0)
                for i in range(len(ident.forms))
            ]
            for i, ball in enumerate(balls[1:], start=1):
                diff = ball - balls[0]
                assert abs(diff.mid) <= diff.rad, (ident.id, i)


def small_fraction(draw):
    num = draw(st.integers(min_value=-4, max_value=4).filter(bool))
    den = draw(st.integers(min_value=5, max_value=11))
    return F(num, den)


class TestLatticeChains:
    """Pairwise form equality across the multi-form lattice chains."""

    @settings(max_examples=20, deadline=None)
    @given(st.data())
    def test_chain_forms_agree(self, data):
        for name in ("LEM-6-1", "LEM-6-2", "COR-6-3", "COR-6-5"):
            ident = lookup(name)
            binding = {
                spec.name: small_fraction(data.draw)
                for spec in ident.free_params
            }
            if any(
                not guard(Q0, binding, None) for guard in ident.pole_guards
            ):
                continue
            n = data.draw(st.integers(min_value=1, max_value=3))
            values = [
                evaluate_form(ident, i, binding, n=n, q=Q0)
                for i in range(len(ident.forms))
            ]
            assert values == [values[0]] * len(values), (name, binding, n)


class TestRelationTables:
    def test_edges_resolve(self):
        catalog_ids = {ident.id for ident in registry()}
        for edge in SPECIALIZATIONS:
            general = lookup(edge.general)
            assert edge.general in catalog_ids
            names = {spec.name for spec in general.free_params}
            assert set(edge.subst) <= names, edge
            assert edge.mode in (EXACT, FORMAL, ANALYTIC)
            if edge.special is not None:
                lookup(edge.special)

    def test_required_edges_present(self):
        pairs = {(edge.general, edge.special) for edge in SPECIALIZATIONS}
        required = {
            ("THM-2-1", "BEM"),
            ("THM-2-5", "DP"),
            ("GARVAN-GEN", "GARVAN"),
            ("COR-2-2", "COR-2-3"),
            ("GEN-E1", "E1"),
            ("GEN-E2", "E2"),
            ("GEN-E3", "E3"),
            ("GEN-E4", "E4"),
            ("GEN-E5", "E5"),
            ("FIN-E1", "DP-FIN-E1"),
            ("FIN-E2", "DP-FIN-E2"),
            ("FIN-E3", None),
            ("FIN-E4", "DP-FIN-E4"),
            ("FIN-E5", None),
        }
        assert required <= pairs

    def test_partner_table_covers_formal_group(self):
        formal_ids = [ident.id for ident in registry() if ident.mode == FORMAL]
        assert list(FINITE_PARTNERS) == formal_ids
        for name in (partner for partner in FINITE_PARTNERS.values() if partner):
            assert lookup(name).has_count, name

    def test_mutations_touch_one_form(self):
        assert len(MUTATIONS) == 5
        assert len({mut.name for mut in MUTATIONS}) == 5
        kinds = {"sign-flip", "exponent-shift", "index-shift"}
        for mut in MUTATIONS:
            assert mut.kind in kinds
            real = lookup(mut.target)
            bad = mut.build(real)
            changed = [
                i
                for i, (old, new) in enumerate(zip(real.forms, bad.forms))
                if old is not new
            ]
            assert changed == [mut.form_index], mut.name
            assert bad.id == real.id

    def test_mutations_are_detected_at_small_depth(self):
        for mut in MUTATIONS:
            real = lookup(mut.target)
            bad = mut.build(real)
            binding = binding_for(real)
            other = 1 if mut.form_index == 0 else 0
            if real.mode == FORMAL:
                lhs = evaluate_form(bad, mut.form_index, binding, k=20)
                rhs = evaluate_form(bad, other, binding, k=20)
                assert not (lhs - rhs).is_zero(), mut.name
            else:
                caught = any(
                    evaluate_form(bad, mut.form_index, binding, n=n, q=Q0)
                    != evaluate_form(bad, other, binding, n=n, q=Q0)
                    for n in (1, 2, 3)
                )
                assert caught, mut.name


class TestAnalyticBounds:
    def test_shifted_product_cap_tracks_reciprocal(self):
        spec = next(
            p for p in lookup("GEN-E1").params if p.analytic_bound is not None
        )
        assert spec.name == "e"
        assert spec.analytic_bound({"a": F(1, 6)}) == 6
        assert spec.analytic_bound({"a": F(0)}) is None

    def test_series_argument_cap_is_product(self):
        spec = next(
            p for p in lookup("QGAUSS").params if p.analytic_bound is not None
        )
        assert spec.name == "c"
        assert spec.analytic_bound({"a": F(1, 3), "b": F(-1, 4)}) == F(1, 12)
