"""Command-line front end: ``kissing {upper,lower,verify,analyze,table}``.

Exit codes: 0 success, 2 invalid input, 3 verification failure,
4 soundness violation.
"""

import argparse
import csv
import dataclasses
import io
import json
import logging
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from kissing import __version__
from kissing.analysis import (
    builtin_spherical_code,
    check_cap_constraint,
    check_pfender,
    load_points_file,
    max_inner_product,
    min_distance,
    two_point_distribution,
)
from kissing.config import Settings, load_settings
from kissing.constructions import (
    builtin_code,
    construction_a_contact_vectors,
    construction_b_contact_vectors,
    construction_report,
    load_code_file,
)
from kissing.errors import InvalidDimension, InvalidInput, KissingError, UnsupportedConfiguration, VerificationFailure
from kissing.geometric import coxeter_boroczky_bound, fejes_toth_cardinality_bound
from kissing.levenshtein import interval_index, interval_table, levenshtein_bound
from kissing.lp import lp_search, lp_search_best, verify_theorem1
from kissing.musin import MusinConfig, musin_search
from kissing.polynomials import Polynomial
from kissing.report import BoundReport, jsonable
from kissing.tables import best_lower_certificate, known_table, reconcile, table_csv, table_text


logger = logging.getLogger(__name__)

METHOD_CHOICES = ("levenshtein", "lp", "cb", "ft", "musin", "all")
REPORT_FIELDS = ("method", "kind", "n", "s", "value", "floor_value", "rigorous")


# ---------------------------------------------------------------------------
# Parsing helpers
# ---------------------------------------------------------------------------


def _parse_number(text: str, exact: bool):
    """Decimal or p/q; a Fraction under ``--exact``."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"not a number: {text!r}") from exc
    return value if exact else float(value)


def _apply_overrides(settings: Settings, args: argparse.Namespace) -> Settings:
    if args.seed is not None:
        settings = dataclasses.replace(settings, musin=dataclasses.replace(settings.musin, seed=args.seed))
    if args.tol is not None:
        settings = dataclasses.replace(
            settings,
            tolerances=dataclasses.replace(settings.tolerances, condition=args.tol),
            geometric=dataclasses.replace(settings.geometric, tol=args.tol),
        )
    return settings


def read_polynomial_file(path: str | Path, exact: bool) -> Polynomial:
    """One monomial coefficient per line, ascending degree; '#' starts a comment."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise InvalidInput(f"cannot read polynomial file {path}: {exc}") from exc
    coeffs = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            coeffs.append(_parse_number(line, exact))
    if not coeffs:
        raise InvalidInput(f"polynomial file {path} has no coefficients")
    return Polynomial(tuple(coeffs))


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _emit_json(payload: dict) -> None:
    payload = {"generated_at": _timestamp(), **jsonable(payload)}
    print(json.dumps(payload, indent=2, sort_keys=True))


def _report_line(report: BoundReport) -> str:
    status = "rigorous" if report.rigorous else "not certified"
    value = report.value
    shown = str(value) if isinstance(value, (int, Fraction)) else f"{float(value):.10g}"
    line = f"{report.method:<17} n={report.n} s={report.s} {report.kind}={shown} floor={report.floor_value} ({status})"
    for note in report.notes:
        line += f"\n  note: {note}"
    return line


def _reports_csv(reports: list[BoundReport]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_FIELDS)
    for report in reports:
        data = report.to_dict()
        writer.writerow([data[key] for key in REPORT_FIELDS])
    return buffer.getvalue()


def _emit_reports(args: argparse.Namespace, reports: list[BoundReport], extra: dict | None = None,
                  best: BoundReport | None = None) -> None:
    if args.format == "json":
        payload = {"reports": [r.to_dict() for r in reports]}
        if best is not None:
            payload["best"] = best.to_dict()
        payload.update(extra or {})
        _emit_json(payload)
    elif args.format == "csv":
        sys.stdout.write(_reports_csv(reports + ([best] if best is not None else [])))
    else:
        for key, value in (extra or {}).items():
            if key == "intervals":
                for item in value:
                    print(f"I_{item['m']}: [{item['lo']:.12g}, {item['hi']:.12g}]")
        for report in reports:
            print(_report_line(report))
        if best is not None:
            print(f"best rigorous upper bound: {best.floor_value} ({best.method})")


# ---------------------------------------------------------------------------
# upper
# ---------------------------------------------------------------------------


def _run_method(method: str, args: argparse.Namespace, s, settings: Settings) -> BoundReport:
    n = args.n
    if method == "levenshtein":
        return levenshtein_bound(
            n, s,
            tie_tol=settings.tolerances.tie,
            condition_tol=settings.tolerances.condition,
            check_points=settings.lp.check_points,
        )
    if method == "lp":
        if args.degree is not None:
            return lp_search(n, s, args.degree, args.grid, settings)
        return lp_search_best(n, s, grid_size=args.grid, workers=args.workers, settings=settings)
    if method == "cb":
        return coxeter_boroczky_bound(n, float(s), settings=settings.geometric)
    if method == "ft":
        if n != 3:
            raise InvalidDimension(f"the Fejes Toth bound applies to n = 3 only, got {n}")
        return fejes_toth_cardinality_bound(float(s))
    if method == "musin":
        config = MusinConfig.from_settings(
            n, float(s), settings.musin,
            t0=args.t0, mu=args.mu, restarts=args.restarts, iterations=args.iterations,
        )
        _, report = musin_search(config, degree=args.degree, grid_size=args.grid, settings=settings)
        return report
    raise InvalidInput(f"unknown method {method!r}")


def _applicable(args: argparse.Namespace, s, settings: Settings) -> list[str]:
    methods = ["levenshtein", "lp"]
    if 0 < s < 1:
        methods.append("cb")
    if args.n == 3:
        methods.append("ft")
    if settings.musin.preset_for(args.n, s) is not None or (args.t0 is not None and args.mu is not None):
        methods.append("musin")
    return methods


def cmd_upper(args: argparse.Namespace, settings: Settings) -> int:
    s = _parse_number(args.s, args.exact)
    extra = {}
    if args.show_intervals:
        index = interval_index(args.n, s, settings.tolerances.tie)
        extra["intervals"] = [dataclasses.asdict(i) for i in interval_table(args.n, index.m + 1)]

    if args.method != "all":
        _emit_reports(args, [_run_method(args.method, args, s, settings)], extra)
        return 0

    reports, failures = [], []
    for method in _applicable(args, s, settings):
        try:
            reports.append(_run_method(method, args, s, settings))
        except KissingError as exc:
            logger.warning("%s failed for n=%d s=%s: %s", method, args.n, s, exc)
            failures.append(exc)
    if not reports:
        raise failures[-1]
    reports.sort(key=lambda r: r.method)
    rigorous = [r for r in reports if r.rigorous]
    best = min(rigorous, key=lambda r: (r.floor_value, r.method)) if rigorous else None
    if best is None:
        logger.warning("no method produced a rigorous bound for n=%d s=%s", args.n, s)
    _emit_reports(args, reports, extra, best)
    return 0


# ---------------------------------------------------------------------------
# lower / verify / analyze / table
# ---------------------------------------------------------------------------


def cmd_lower(args: argparse.Namespace, settings: Settings) -> int:
    code = builtin_code(args.code) if args.code else load_code_file(args.code_file)
    report = construction_report(code, args.construction)
    extra = {}
    if args.enumerate:
        limit = settings.constructions.max_enumeration_length
        if args.construction == "a":
            contacts = construction_a_contact_vectors(code, limit)
        elif args.construction == "b":
            contacts = construction_b_contact_vectors(code, limit)
        else:
            raise UnsupportedConfiguration("contact vectors are enumerated for constructions a and b only")
        extra = {
            "contact_count": len(contacts),
            "contact_max_inner_product": max_inner_product(contacts),
            "contact_vectors": contacts.vectors,
        }
    if args.format == "text" and extra:
        print(_report_line(report))
        print(f"enumerated {extra['contact_count']} contact vectors, "
              f"max inner product {extra['contact_max_inner_product']:.12g}")
        return 0
    _emit_reports(args, [report], extra)
    return 0


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    s = _parse_number(args.s, args.exact)
    p = read_polynomial_file(args.poly_file, args.exact)
    report = verify_theorem1(args.n, s, p, settings.tolerances.condition, settings.lp.check_points)
    _emit_reports(args, [report])
    return 0


def cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    if args.points_file:
        code = load_points_file(args.points_file, settings.analysis)
    else:
        code = builtin_spherical_code(args.points)
    s_code = max_inner_product(code)
    checks = []
    if args.pfender is not None:
        checks.append(check_pfender(code, float(_parse_number(args.pfender, False))))
    if args.cap is not None:
        m, t = args.cap
        checks.append(check_cap_constraint(code, int(m), s_code, float(_parse_number(t, False))))

    distribution = two_point_distribution(code)
    summary = {
        "name": code.name,
        "n": code.n,
        "size": len(code),
        "max_inner_product": s_code,
        "min_distance": min_distance(code),
        "distance_distribution": [{"t": t, "A_t": a} for t, a in distribution.items()],
        "checks": [c.to_dict() for c in checks],
    }
    if args.format == "json":
        _emit_json(summary)
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(("t", "A_t"))
        for t, a in distribution.items():
            writer.writerow((f"{t:.12g}", f"{a:.12g}"))
    else:
        print(f"{code.name or 'code'}: {len(code)} vectors in R^{code.n}, "
              f"s(C) = {s_code:.12g}, min distance {min_distance(code):.12g}")
        for t, a in distribution.items():
            print(f"  A({t:+.9f}) = {a:.9g}")
        for check in checks:
            verdict = "holds" if check.holds else "FAILS"
            print(f"{check.name} on {check.interval}: {check.lhs:.9g} <= {check.rhs:.9g} {verdict}")

    failed = [c.name for c in checks if not c.holds]
    if failed:
        raise VerificationFailure(f"inequality fails: {', '.join(failed)}")
    return 0


def _reconcile_row(n: int, with_lp: bool, settings: Settings):
    half = Fraction(1, 2)
    reports = [levenshtein_bound(n, half, certify=False), best_lower_certificate(n)]
    if n == 3:
        reports.append(fejes_toth_cardinality_bound(0.5))
    if with_lp:
        try:
            reports.append(lp_search(n, 0.5, settings=settings))
        except KissingError as exc:
            logger.warning("LP failed at n=%d: %s", n, exc)
    return reconcile(n, reports)


def cmd_table(args: argparse.Namespace, settings: Settings) -> int:
    rows = known_table()
    if not args.reconcile:
        if args.format == "json":
            _emit_json({"rows": [dataclasses.asdict(r) for r in rows]})
        elif args.format == "csv":
            sys.stdout.write(table_csv(rows))
        else:
            print(table_text(rows))
        return 0

    results = [_reconcile_row(row.dimension, args.with_lp, settings) for row in rows]
    if args.format == "json":
        _emit_json({"reconciliation": [r.to_dict() for r in results]})
    elif args.format == "csv":
        fields = ("n", "table_lower", "table_upper", "best_lower", "best_upper", "gap")
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(fields)
        for r in results:
            data = r.to_dict()
            writer.writerow([data[f] for f in fields])
    else:
        print(f"{'n':>3}  {'lower':>7}  {'upper':>7}  {'ours_lo':>7}  {'ours_up':>7}  {'gap':>7}")
        for r in results:
            print(f"{r.n:>3}  {r.table_lower:>7}  {r.table_upper:>7}  "
                  f"{r.best_lower!s:>7}  {r.best_upper!s:>7}  {r.gap!s:>7}")
    return 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kissing", description="Bounds on kissing numbers and spherical codes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text")
    parser.add_argument("--seed", type=int, help="seed for the randomised h_m search")
    parser.add_argument("--tol", type=float, help="verification and quadrature tolerance")
    parser.add_argument("--config", help="settings YAML (default: $KISSING_CONFIG or ./kissing_config.yaml)")
    parser.add_argument("--exact", action="store_true", help="rational arithmetic where supported")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    upper = sub.add_parser("upper", help="upper bounds on A(n, s)")
    upper.add_argument("--n", type=int, required=True)
    upper.add_argument("--s", required=True)
    upper.add_argument("--method", choices=METHOD_CHOICES, default="levenshtein")
    upper.add_argument("--degree", type=int)
    upper.add_argument("--grid", type=int)
    upper.add_argument("--workers", type=int, default=1)
    upper.add_argument("--t0", type=float)
    upper.add_argument("--mu", type=int)
    upper.add_argument("--restarts", type=int)
    upper.add_argument("--iterations", type=int)
    upper.add_argument("--show-intervals", action="store_true")
    upper.set_defaults(handler=cmd_upper)

    lower = sub.add_parser("lower", help="kissing-number lower bounds from binary codes")
    lower.add_argument("--construction", choices=("a", "b", "leech"), required=True)
    source = lower.add_mutually_exclusive_group(required=True)
    source.add_argument("--code")
    source.add_argument("--code-file")
    lower.add_argument("--enumerate", action="store_true")
    lower.set_defaults(handler=cmd_lower)

    verify = sub.add_parser("verify", help="check a polynomial certificate")
    verify.add_argument("--poly-file", required=True)
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument("--s", required=True)
    verify.set_defaults(handler=cmd_verify)

    analyze = sub.add_parser("analyze", help="distance distribution and inequalities of a code")
    points = analyze.add_mutually_exclusive_group(required=True)
    points.add_argument("--points-file")
    points.add_argument("--points")
    analyze.add_argument("--pfender", metavar="S")
    analyze.add_argument("--cap", nargs=2, metavar=("M", "T"))
    analyze.set_defaults(handler=cmd_analyze)

    table = sub.add_parser("table", help="best known bounds for n = 3..24")
    table.add_argument("--reconcile", action="store_true")
    table.add_argument("--with-lp", action="store_true")
    table.set_defaults(handler=cmd_table)
    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="[kissing] %(message)s",
    )
    try:
        settings = _apply_overrides(load_settings(args.config), args)
        return args.handler(args, settings)
    except KissingError as exc:
        print(f"kissing: {exc}", file=sys.stderr)
        return exc.exit_code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
