"""Command line front end.

Three commands: ``suite`` runs the verification suite and emits a JSON or
text report, ``eval`` parses and evaluates one expression, and ``list``
prints the catalogued identities.  Exit codes: 0 when everything passed,
1 when any check did not pass, 2 for configuration or parse errors.
"""

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .balls import Ball
from .dsl import eval_expression, parse_expression
from .engine import SuitePlan, run_suite
from .errors import ExprSyntaxError, QsvError
from .registry import registry

_ALL_MODES = ("exact", "formal", "analytic")


class UsageError(Exception):
    """Bad configuration detected past argparse; maps to exit code 2."""


def emit_report(rows, *, seed, order, n_max, timestamp=None, version=__version__):
    """Rows as a JSON-ready dict; key order is part of the format."""
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    results = []
    for r in rows:
        item = {
            "id": r.identity_id,
            "mode": r.mode,
            "binding": {k: str(v) for k, v in r.binding.items()},
        }
        if r.n is not None:
            item["n"] = r.n
        item["status"] = r.status
        item["metric"] = r.metric
        item["duration_ms"] = r.duration_ms
        item["heuristic_tail"] = r.heuristic_tail
        results.append(item)
    return {
        "run": {
            "seed": seed,
            "order": order,
            "n_max": n_max,
            "timestamp": timestamp,
            "version": version,
        },
        "results": results,
    }


def _text_report(rows):
    lines = []
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in rows:
        counts[r.status] = counts.get(r.status, 0) + 1
        bind = " ".join(f"{k}={v}" for k, v in r.binding.items())
        piece = [f"{r.status:<7} {r.identity_id:<20} {r.mode:<9}"]
        if r.n is not None:
            piece.append(f"n={r.n}")
        if bind:
            piece.append(bind)
        piece.append(f"metric={r.metric}")
        if r.heuristic_tail:
            piece.append("heuristic-tail")
        lines.append(" ".join(piece))
    lines.append(
        f"total {len(rows)}: {counts['pass']} pass,"
        f" {counts['fail']} fail, {counts['skipped']} skipped"
    )
    return "\n".join(lines) + "\n"


def _write_output(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as err:
        raise UsageError(f"cannot write {out}: {err}")


def cmd_suite(args):
    modes = _ALL_MODES if args.mode == "all" else (args.mode,)
    plan = SuitePlan(
        seed=args.seed,
        modes=modes,
        ids=tuple(args.id) if args.id else None,
        order=args.order,
        n_max=args.n_max,
        samples=args.samples,
    )
    try:
        rows = run_suite(plan)
    except KeyError as err:
        raise UsageError(str(err.args[0]) if err.args else str(err))
    report = emit_report(rows, seed=plan.seed, order=plan.order, n_max=plan.n_max)
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = _text_report(rows)
    _write_output(text, args.out)
    return 0 if all(r.status == "pass" for r in rows) else 1


def format_series(s):
    if s.is_zero():
        return f"0 + O(q^{s.valid_through + 1})"
    parts = []
    for i, c in enumerate(s.coeffs):
        if c == 0:
            continue
        e = s.min_exp + i
        mag = abs(c)
        if e == 0:
            body = str(mag)
        elif e == 1:
            body = "q" if mag == 1 else f"{mag}*q"
        else:
            body = f"q^{e}" if mag == 1 else f"{mag}*q^{e}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    parts.append(f"+ O(q^{s.valid_through + 1})")
    return " ".join(parts)


def _decimal(x, places):
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    scaled = abs(x) * 10**places
    digits = str(scaled.numerator // scaled.denominator).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _sci(x):
    f = float(x)
    if x != 0 and f == 0.0:
        return "<1e-300"
    return f"{f:.3e}"


def format_point(value):
    if not isinstance(value, Ball):
        return str(value)
    tag = ", heuristic" if value.heuristic else ""
    return f"{_decimal(value.mid, 40)} (tail <= {_sci(value.rad)}{tag})"


def _parse_binding(items):
    binding = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name.isidentifier():
            raise UsageError(f"bad binding {item!r}; expected name=p/q")
        try:
            binding[name] = Fraction(value)
        except (ValueError, ZeroDivisionError) as err:
            raise UsageError(f"bad rational in {item!r}: {err}")
    return binding


def cmd_eval(args):
    try:
        ast = parse_expression(args.expr)
    except ExprSyntaxError as err:
        sys.stderr.write(f"error: {err}\n  {args.expr}\n  {' ' * err.offset}^\n")
        return 2
    binding = _parse_binding(args.bind)
    try:
        if args.series is not None:
            value = eval_expression(ast, order=args.series, binding=binding)
            print(format_series(value))
        else:
            try:
                q = Fraction(args.point)
            except (ValueError, ZeroDivisionError) as err:
                raise UsageError(f"bad rational {args.point!r}: {err}")
            value = eval_expression(ast, point=q, binding=binding)
            print(format_point(value))
    except (QsvError, ZeroDivisionError, OverflowError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2
    return 0


def cmd_list(args):
    for ident in registry():
        names = ",".join(p.name for p in ident.params)
        print(
            f"{ident.id:<18} {ident.mode:<9} params={names or '-'}"
            f" forms={len(ident.forms)}"
        )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qsv", description="verify catalogued q-series identities"
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    suite = sub.add_parser("suite", help="run the verification suite")
    suite.add_argument(
        "--mode", choices=("exact", "formal", "analytic", "all"), default="all"
    )
    suite.add_argument(
        "--id", action="append", metavar="ID", help="restrict to these identities"
    )
    suite.add_argument("--order", type=int, default=40, metavar="K")
    suite.add_argument("--n-max", type=int, default=6, dest="n_max", metavar="N")
    suite.add_argument("--samples", type=int, default=None, metavar="S")
    suite.add_argument("--seed", type=int, default=1)
    suite.add_argument("--format", choices=("json", "text"), default="json")
    suite.add_argument("--out", metavar="PATH")
    suite.set_defaults(func=cmd_suite)

    ev = sub.add_parser("eval", help="evaluate one expression")
    ev.add_argument("--expr", required=True, metavar="EXPR")
    how = ev.add_mutually_exclusive_group(required=True)
    how.add_argument("--series", type=int, metavar="K")
    how.add_argument("--point", metavar="Q")
    ev.add_argument("--bind", action="append", metavar="NAME=P/Q")
    ev.set_defaults(func=cmd_eval)

    lst = sub.add_parser("list", help="list catalogued identities")
    lst.set_defaults(func=cmd_list)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
