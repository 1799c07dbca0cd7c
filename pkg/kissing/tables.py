"""Best known kissing-number bounds for n <= 24 and reconciliation against them."""

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass

from kissing.analysis import builtin_spherical_code, max_inner_product
from kissing.constructions import builtin_code, construction_report, even_weight_lower_bound
from kissing.errors import InvalidDimension, PreconditionViolated, SoundnessViolation
from kissing.report import BoundReport


logger = logging.getLogger(__name__)

CSV_HEADER = ("dimension", "lower", "upper")


@dataclass(frozen=True)
class TableRow:
    dimension: int
    lower: int
    upper: int
    lower_source: str = "table"
    upper_source: str = "table"


_ROWS = (
    TableRow(3, 12, 12, "construction", "geometric"),
    TableRow(4, 24, 24, "construction", "musin"),
    TableRow(5, 40, 45, "table", "sdp"),
    TableRow(6, 72, 78, "table", "sdp"),
    TableRow(7, 126, 134, "table", "sdp"),
    TableRow(8, 240, 240, "construction", "lp"),
    TableRow(9, 306, 364, "table", "sdp"),
    TableRow(10, 500, 554, "table", "sdp"),
    TableRow(11, 582, 870, "table", "sdp"),
    TableRow(12, 840, 1357, "table", "sdp"),
    TableRow(13, 1154, 2069, "table", "sdp"),
    TableRow(14, 1606, 3183, "table", "sdp"),
    TableRow(15, 2564, 4866, "table", "sdp"),
    TableRow(16, 4320, 7355, "table", "sdp"),
    TableRow(17, 5346, 11072, "table", "sdp"),
    TableRow(18, 7398, 16572, "table", "sdp"),
    TableRow(19, 10668, 24812, "table", "sdp"),
    TableRow(20, 17400, 36764, "table", "sdp"),
    TableRow(21, 27720, 54584, "table", "sdp"),
    TableRow(22, 49896, 82340, "table", "sdp"),
    TableRow(23, 93150, 124416, "table", "sdp"),
    TableRow(24, 196560, 196560, "construction", "lp"),
)

# Values cited alongside the table; the rows above are kept exactly as printed.
ANNOTATIONS = {
    5: "semidefinite programming gives tau_5 <= 44.998, so tau_5 <= 44; the row keeps 45",
}

ASYMPTOTIC_NOTE = (
    "For large n the best known bounds are exponential: "
    "2^(0.2075 n (1 + o(1))) <= tau_n <= 2^(0.401 n (1 + o(1)))."
)


def known_table() -> list[TableRow]:
    return list(_ROWS)


def row_for(n: int) -> TableRow:
    for row in _ROWS:
        if row.dimension == n:
            return row
    raise InvalidDimension(f"the table covers dimensions 3..24, got {n}")


def table_csv(rows: list[TableRow] | None = None) -> str:
    rows = known_table() if rows is None else rows
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow((row.dimension, row.lower, row.upper))
    return buffer.getvalue()


def table_json(rows: list[TableRow] | None = None) -> str:
    rows = known_table() if rows is None else rows
    payload = {
        "rows": [asdict(r) for r in rows],
        "annotations": {str(k): v for k, v in ANNOTATIONS.items()},
        "asymptotics": ASYMPTOTIC_NOTE,
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def table_from_csv(text: str) -> list[TableRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise PreconditionViolated(f"unexpected table header {header}")
    rows = []
    for dimension, lower, upper in reader:
        base = row_for(int(dimension))
        rows.append(TableRow(int(dimension), int(lower), int(upper), base.lower_source, base.upper_source))
    return rows


def table_text(rows: list[TableRow] | None = None) -> str:
    rows = known_table() if rows is None else rows
    lines = [f"{'n':>3}  {'lower':>7}  {'upper':>7}"]
    for row in rows:
        mark = " *" if row.dimension in ANNOTATIONS else ""
        lines.append(f"{row.dimension:>3}  {row.lower:>7}  {row.upper:>7}{mark}")
    for n, note in sorted(ANNOTATIONS.items()):
        lines.append(f"* n={n}: {note}")
    return "\n".join(lines)


@dataclass(frozen=True)
class Reconciliation:
    n: int
    table_lower: int
    table_upper: int
    best_upper: int | None
    upper_method: str | None
    best_lower: int | None
    lower_method: str | None

    @property
    def upper_delta(self) -> int | None:
        return None if self.best_upper is None else self.best_upper - self.table_upper

    @property
    def lower_delta(self) -> int | None:
        return None if self.best_lower is None else self.best_lower - self.table_lower

    @property
    def gap(self) -> int | None:
        if self.best_upper is None or self.best_lower is None:
            return None
        return self.best_upper - self.best_lower

    def to_dict(self) -> dict:
        data = asdict(self)
        data.update(upper_delta=self.upper_delta, lower_delta=self.lower_delta, gap=self.gap)
        return data


def reconcile(n: int, reports: list[BoundReport]) -> Reconciliation:
    """Compare computed bounds at s = 1/2 with the table.

    A rigorous upper bound below the table's lower bound, or a lower-bound
    certificate above its upper bound, raises ``SoundnessViolation``.
    """
    row = row_for(n)
    for report in reports:
        if report.n != n or abs(float(report.s) - 0.5) > 1e-12:
            raise PreconditionViolated(f"report for (n={report.n}, s={report.s}) given to reconcile n={n}, s=1/2")

    uppers = [r for r in reports if r.kind == "upper" and r.rigorous]
    lowers = [r for r in reports if r.kind == "lower"]
    for r in uppers:
        if r.floor_value < row.lower:
            raise SoundnessViolation(
                f"n={n}: {r.method} upper bound {r.floor_value} is below the known lower bound {row.lower}"
            )
    for r in lowers:
        if r.floor_value > row.upper:
            raise SoundnessViolation(
                f"n={n}: {r.method} certificate {r.floor_value} exceeds the known upper bound {row.upper}"
            )

    best_upper = min(uppers, key=lambda r: (r.floor_value, r.method), default=None)
    best_lower = max(lowers, key=lambda r: r.floor_value, default=None)
    result = Reconciliation(
        n=n,
        table_lower=row.lower,
        table_upper=row.upper,
        best_upper=best_upper.floor_value if best_upper else None,
        upper_method=best_upper.method if best_upper else None,
        best_lower=best_lower.floor_value if best_lower else None,
        lower_method=best_lower.method if best_lower else None,
    )
    logger.info("Reconciled n=%d: upper %s (table %d), lower %s (table %d)",
                n, result.best_upper, row.upper, result.best_lower, row.lower)
    return result


def best_lower_certificate(n: int) -> BoundReport:
    """Largest constructive lower bound available from the built-in catalogue."""
    row_for(n)
    candidates = [even_weight_lower_bound(n)]
    named = {3: ("a", "even_weight(3)"), 4: ("a", "repetition(4)"), 8: ("a", "ext_hamming8"), 24: ("leech", "golay24")}
    if n in named:
        construction, name = named[n]
        candidates.append(construction_report(builtin_code(name), construction))
    for name, dim in (("icosahedron", 3), ("d4_roots", 4), ("e8_roots", 8)):
        if dim == n:
            code = builtin_spherical_code(name)
            if max_inner_product(code) <= 0.5 + 1e-12:
                candidates.append(BoundReport(
                    n=n, s=0.5, method="construction", value=len(code), rigorous=True, kind="lower",
                    certificate={"spherical_code": name, "s": max_inner_product(code)},
                ))
    return max(candidates, key=lambda r: r.value)
