"""Explicit spherical codes and the inequalities their distance distributions obey."""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from kissing import catalog
from kissing.config import DEFAULTS, AnalysisSettings
from kissing.errors import (
    InvalidInput,
    OutOfRange,
    PreconditionViolated,
    SelfCheckFailed,
    SingletonCode,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SphericalCode:
    """Unit vectors in R^n, stored as the rows of an (M, n) array."""

    vectors: np.ndarray
    name: str = ""
    settings: AnalysisSettings = field(default=DEFAULTS.analysis, repr=False)

    def __post_init__(self):
        vectors = np.atleast_2d(np.asarray(self.vectors, dtype=float))
        if vectors.size == 0:
            raise InvalidInput("a spherical code needs at least one vector")
        norms = np.linalg.norm(vectors, axis=1)
        worst = float(np.max(np.abs(norms - 1.0)))
        if worst > self.settings.unit_tolerance:
            raise OutOfRange(f"vectors must have unit norm; worst deviation {worst:.3g}")
        rank = np.linalg.matrix_rank(vectors, tol=self.settings.rank_tolerance)
        if rank < vectors.shape[1]:
            raise PreconditionViolated(f"vectors span only {rank} of {vectors.shape[1]} dimensions")
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @classmethod
    def from_rows(cls, rows, name: str = "", settings: AnalysisSettings = DEFAULTS.analysis) -> "SphericalCode":
        """Re-normalise rows within ``renormalize_tolerance`` of unit length, reject the rest."""
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        norms = np.linalg.norm(rows, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1.0) > settings.renormalize_tolerance)
        if bad.size:
            raise OutOfRange(f"row {int(bad[0]) + 1} has norm {norms[bad[0]]:.9g}, not within tolerance of 1")
        return cls(rows / norms[:, None], name=name, settings=settings)

    @property
    def n(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return self.vectors.shape[0]

    @cached_property
    def gram(self) -> np.ndarray:
        return self.vectors @ self.vectors.T

    def off_diagonal(self) -> np.ndarray:
        """Inner products of ordered distinct pairs."""
        g = self.gram
        return g[~np.eye(len(self), dtype=bool)]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    closed_lo: bool = True
    closed_hi: bool = False

    def __post_init__(self):
        if not -1.0 <= self.lo <= self.hi <= 1.0:
            raise OutOfRange(f"interval [{self.lo}, {self.hi}] must lie within [-1, 1]")

    def mask(self, t: np.ndarray, tol: float = DEFAULTS.analysis.merge_tolerance) -> np.ndarray:
        above = t >= self.lo - tol if self.closed_lo else t > self.lo + tol
        below = t <= self.hi + tol if self.closed_hi else t < self.hi - tol
        return above & below

    def __str__(self) -> str:
        return f"{'[' if self.closed_lo else '('}{self.lo:.6g}, {self.hi:.6g}{']' if self.closed_hi else ')'}"


@dataclass(frozen=True)
class DistanceDistribution:
    """A_t = |{(x, y) : <x, y> = t}| / |C|, including the diagonal A_1 = 1."""

    size: int
    values: tuple[float, ...]
    counts: tuple[float, ...]

    def items(self):
        return zip(self.values, self.counts)

    def off_diagonal_total(self) -> float:
        return sum(a for t, a in self.items() if t < 1.0 - 1e-9)

    def moment(self, interval: Interval, k: int) -> float:
        """|C| * sum_{t in I} A_t t^k."""
        t = np.array(self.values)
        a = np.array(self.counts)
        inside = interval.mask(t) & (t < 1.0 - 1e-9)
        return float(self.size * np.sum(a[inside] * t[inside] ** k))


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    interval: str
    note: str = ""

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs + 1e-9 * max(1.0, abs(self.rhs))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "holds": self.holds,
            "interval": self.interval,
            "note": self.note,
        }


def _require_pairs(code: SphericalCode) -> None:
    if len(code) < 2:
        raise SingletonCode("at least two vectors are needed")


def max_inner_product(code: SphericalCode) -> float:
    """s(C): largest inner product between distinct vectors."""
    _require_pairs(code)
    return float(code.off_diagonal().max())


def min_distance(code: SphericalCode) -> float:
    """Smallest Euclidean distance, sqrt(2 - 2 s(C))."""
    return math.sqrt(max(0.0, 2.0 - 2.0 * max_inner_product(code)))


def two_point_distribution(code: SphericalCode) -> DistanceDistribution:
    _require_pairs(code)
    tol = code.settings.merge_tolerance
    flat = np.sort(code.gram.ravel())
    values, counts = [], []
    start = 0
    for i in range(1, flat.size + 1):
        if i == flat.size or flat[i] - flat[i - 1] > tol:
            bucket = flat[start:i]
            values.append(float(bucket.mean()))
            counts.append(bucket.size / len(code))
            start = i
    return DistanceDistribution(size=len(code), values=tuple(values), counts=tuple(counts))


def s_k_moment(code: SphericalCode, interval: Interval, k: int) -> float:
    """Sum of <x, y>^k over ordered distinct pairs with <x, y> in the interval."""
    if k < 0:
        raise OutOfRange(f"k must be >= 0, got {k}")
    t = code.off_diagonal()
    inside = interval.mask(t, code.settings.merge_tolerance)
    return float(np.sum(t[inside] ** k))


def _require_bounded_by(code: SphericalCode, s: float) -> None:
    actual = max_inner_product(code)
    if actual > s + 1e-12:
        raise PreconditionViolated(f"s(C) = {actual:.12g} exceeds s = {s}")


def check_pfender(code: SphericalCode, s: float) -> InequalityReport:
    """s_2(C, I) <= s_0(C, I) s + |C| (1 - s) on I = [-1, -sqrt(s))."""
    if s <= 0:
        raise OutOfRange(f"s must be positive, got {s}")
    _require_bounded_by(code, s)
    interval = Interval(-1.0, -math.sqrt(s))
    s0 = s_k_moment(code, interval, 0)
    s2 = s_k_moment(code, interval, 2)
    return InequalityReport(
        name="pfender",
        lhs=s2,
        rhs=s0 * s + len(code) * (1.0 - s),
        interval=str(interval),
        note="interval taken as [-1, -sqrt(s))",
    )


def default_cap_threshold(m: int, s: float) -> float:
    radicand = s + (1.0 - s) / (m + 1)
    if radicand < 0.0:
        raise OutOfRange(f"no cap threshold for m={m}, s={s}; pass t explicitly")
    return math.sqrt(radicand)


def check_cap_constraint(code: SphericalCode, m: int, s: float, t: float | None = None) -> InequalityReport:
    """s_0(C, [-1, -t)) <= m |C|: no cap opposite a point holds more than m others."""
    if m < 0:
        raise OutOfRange(f"m must be >= 0, got {m}")
    _require_bounded_by(code, s)
    t = default_cap_threshold(m, s) if t is None else t
    interval = Interval(-1.0, -t)
    return InequalityReport(
        name=f"cap(m={m}, t={t:.6g})",
        lhs=s_k_moment(code, interval, 0),
        rhs=float(m * len(code)),
        interval=str(interval),
    )


def check_triangle(u: float, v: float, t: float) -> bool:
    """Three unit vectors with pairwise inner products u, v, t exist."""
    for x in (u, v, t):
        if not -1.0 <= x <= 1.0:
            raise OutOfRange(f"inner products must lie in [-1, 1], got {x}")
    return 1.0 + 2.0 * u * v * t >= u * u + v * v + t * t - 1e-12


def builtin_spherical_code(name: str) -> SphericalCode:
    """Named configuration from the catalogue, checked against its (n, |C|, s(C))."""
    entry, args = catalog.lookup(name, catalog.SPHERICAL)
    code = SphericalCode(entry.build(*args), name=name)
    n, size, s = entry.expected(*args)
    if code.n != n or len(code) != size:
        raise SelfCheckFailed(f"{name}: expected {size} vectors in R^{n}, got {len(code)} in R^{code.n}")
    actual = max_inner_product(code)
    if abs(actual - s) > 1e-12:
        raise SelfCheckFailed(f"{name}: expected s = {s!r}, got {actual!r}")
    return code


def load_points_file(path: str | Path, settings: AnalysisSettings = DEFAULTS.analysis) -> SphericalCode:
    """One vector per line, whitespace-separated decimals; '#' starts a comment."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read points file {path}: {exc}") from exc
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([float(x) for x in line.split()])
        except ValueError as exc:
            raise InvalidInput(f"{path}:{number}: {exc}") from exc
    if not rows:
        raise InvalidInput(f"points file {path} has no vectors")
    if len({len(r) for r in rows}) != 1:
        raise InvalidInput(f"{path}: vectors have differing dimensions")
    return SphericalCode.from_rows(rows, name=path.name, settings=settings)
