"""Acceptance checks: one test per delivery criterion, at stated tolerances.

Run with -v to get one pass/fail line per criterion.
"""

import dataclasses
import json
import time
from fractions import Fraction

from qsv.cli import emit_report
from qsv.context import SeriesCtx
from qsv.engine import (
    SuitePlan,
    run_specializations,
    run_suite,
    verify_coherence,
    verify_correction,
)
from qsv.registry import lookup, registry
from qsv.registry.base import evaluate_form
from qsv.registry.relations import MUTATIONS

F = Fraction

TIME_BUDGET_SECONDS = 300
POINT_AGREEMENT = F(1, 10**15)


def strip_timing(rows):
    return tuple(dataclasses.replace(r, duration_ms=0) for r in rows)


def base_id(row):
    return row.identity_id.split("#")[0].split("->")[0]


class TestAcceptance:
    def test_full_suite_all_pass_within_time_budget(self):
        t0 = time.perf_counter()
        rows = run_suite(SuitePlan(seed=1))
        elapsed = time.perf_counter() - t0
        assert elapsed <= TIME_BUDGET_SECONDS
        assert len(rows) == 3692
        assert all(r.status == "pass" for r in rows)
        by_mode = {}
        for r in rows:
            by_mode[r.mode] = by_mode.get(r.mode, 0) + 1
        # 27 exact ids x 20 samples x n 1..6, plus two correction rows;
        # 13 formal ids x 10 samples plus 3 with n 1..6; 14 analytic x 10
        assert by_mode == {"exact": 3242, "formal": 310, "analytic": 140}
        assert {base_id(r) for r in rows} == {i.id for i in registry()}

    def test_divisor_counts_through_order_forty(self):
        ident = lookup("KLUYVER")
        want = {}
        for m in range(1, 41):
            want[m] = F(sum(1 for d in range(1, m + 1) if m % d == 0))
        for i in range(len(ident.forms)):
            series = evaluate_form(ident, i, {}, k=40)
            got = {
                e: c
                for e, c in zip(
                    range(series.min_exp, series.min_exp + len(series.coeffs)),
                    series.coeffs,
                )
                if c != 0 and e <= 40
            }
            assert got == want

    def test_pentagonal_expansion_through_order_forty(self):
        series = SeriesCtx(40).poch_inf(1, 1)
        want = {0: F(1)}
        k = 1
        while True:
            hit = False
            for g in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
                if g <= 40:
                    want[g] = F((-1) ** k)
                    hit = True
            if not hit:
                break
            k += 1
        got = {
            e: c
            for e, c in zip(
                range(series.min_exp, series.min_exp + len(series.coeffs)),
                series.coeffs,
            )
            if c != 0
        }
        assert series.valid_through >= 40
        assert got == want

    def test_specialization_lattice_all_edges_pass(self):
        rows = run_specializations()
        assert len(rows) == 24
        assert all(r.status == "pass" for r in rows)

    def test_corrections_report_agreement_and_residual(self):
        rows = []
        for ident in registry():
            rows.extend(verify_correction(ident))
        assert [r.identity_id for r in rows] == [
            "DEMS-COR#literal", "FIN-E4#literal",
        ]
        for r in rows:
            assert r.status == "pass"
            corrected, residual = r.metric.split(";")
            assert corrected == "corrected=0"
            label, value = residual.split("=")
            assert label == "literal-residual"
            assert F(value) != 0

    def test_every_mutation_detected_with_no_false_passes(self):
        for mutation in MUTATIONS:
            plan = SuitePlan(
                seed=1, order=20, n_max=3, samples=2,
                mutations=(mutation.name,),
            )
            rows = run_suite(plan)
            hits = [r for r in rows if r.status != "pass"]
            assert hits, mutation.name
            assert {base_id(r) for r in hits} == {mutation.target}

    def test_infinite_and_finite_sides_agree_at_fixed_point(self):
        report = verify_coherence(lookup("GARVAN-GEN"), lookup("THM-2-9"))
        assert report.status == "pass"
        assert report.n == 40
        assert report.binding["q"] == F(1, 5)
        gap = float(report.metric.split(";")[0])
        assert gap <= float(POINT_AGREEMENT)

    def test_reports_identical_across_reruns_and_workers(self):
        plan = SuitePlan(seed=1, order=20, n_max=3, samples=3)
        first = run_suite(plan)
        second = run_suite(plan)
        parallel = run_suite(plan, workers=2)
        assert strip_timing(first) == strip_timing(second)
        assert strip_timing(first) == strip_timing(parallel)

        def as_bytes(rows):
            report = emit_report(
                strip_timing(rows),
                seed=plan.seed, order=plan.order, n_max=plan.n_max,
                timestamp="fixed",
            )
            return json.dumps(report, indent=2).encode()

        assert as_bytes(first) == as_bytes(second) == as_bytes(parallel)
