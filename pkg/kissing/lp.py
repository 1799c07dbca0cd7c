"""Delsarte certificates and the discretised LP search for better polynomials.

A polynomial f with f(t) <= 0 on [-1, s] (condition A1) and a Gegenbauer
expansion with f_0 > 0, f_k >= 0 (condition A2) bounds A(n, s) by f(1)/f_0.
``lp_search`` finds such an f by linear programming on a grid of [-1, s] and
then repairs the continuum condition before verifying it.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from numbers import Rational

import numpy as np
import sympy

from kissing.config import DEFAULTS, Settings
from kissing.errors import (
    ConditionViolated,
    InvalidDimension,
    KissingError,
    LpInfeasible,
    OutOfRange,
    PostVerificationFailed,
    PreconditionViolated,
)
from kissing.polynomials import (
    GegenbauerExpansion,
    Polynomial,
    gegenbauer_expand,
    gegenbauer_values,
    maximize_on,
)
from kissing.report import BoundReport, certificate_payload
from kissing.simplex import INFEASIBLE, UNBOUNDED, LpProblem, simplex_solve


logger = logging.getLogger(__name__)

MIN_DEGREE, MAX_DEGREE = 3, 30
# largest degree tried by default in lp_search_best
SEARCH_DEGREE_CAP = 13


def default_degree(n: int) -> int:
    if n <= 4:
        return 9
    if n <= 12:
        return 11
    return 13


def _check_ns(n, s) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 3:
        raise InvalidDimension(f"dimension must be an integer >= 3, got {n!r}")
    if not -1 <= s < 1:
        raise OutOfRange(f"s must lie in [-1, 1), got {s}")


def _to_sympy(x) -> sympy.Rational:
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def _check_a1_exact(p: Polynomial, s) -> None:
    """Decide p <= 0 on [-1, s] exactly: isolate the real roots, test every gap."""
    t = sympy.Symbol("t")
    poly = sympy.Poly([_to_sympy(c) for c in reversed(p.coeffs)], t, domain=sympy.QQ)
    lo, hi = sympy.Rational(-1), _to_sympy(s)
    points = {lo, hi}
    if poly.degree() > 0:
        for (a, b), _ in poly.intervals(inf=lo, sup=hi):
            points.update(x for x in (a, b) if lo <= x <= hi)
    ordered = sorted(points)
    checkpoints = ordered + [(x + y) / 2 for x, y in zip(ordered, ordered[1:])]
    for x in checkpoints:
        value = poly.eval(x)
        if value > 0:
            raise ConditionViolated("A1", float(x), float(value), f"p({x}) = {value} > 0")


def _check_a1_float(p: Polynomial, s, tol: float, samples: int) -> None:
    scale = max(abs(float(c)) for c in p.coeffs)
    witness, value = maximize_on(p, -1.0, float(s), samples)
    if value > tol * scale:
        raise ConditionViolated("A1", witness, value, f"p({witness:.6g}) = {value:.3g} > 0")


def _check_a2(expansion: GegenbauerExpansion, tol: float) -> None:
    coeffs = expansion.coeffs
    if expansion.exact:
        if coeffs[0] <= 0:
            raise ConditionViolated("A2", 0, coeffs[0], "f_0 must be positive")
        for k, fk in enumerate(coeffs[1:], start=1):
            if fk < 0:
                raise ConditionViolated("A2", k, fk, f"f_{k} = {fk} < 0")
        return
    scale = max(abs(c) for c in coeffs)
    if coeffs[0] <= tol * scale:
        raise ConditionViolated("A2", 0, coeffs[0], "f_0 must be positive")
    for k, fk in enumerate(coeffs[1:], start=1):
        if fk < -tol * scale:
            raise ConditionViolated("A2", k, fk, f"f_{k} = {fk:.3g} < 0")


def verify_theorem1(
    n: int,
    s,
    p: Polynomial,
    tol: float = DEFAULTS.tolerances.condition,
    samples: int = DEFAULTS.lp.check_points,
) -> BoundReport:
    """Check A1 and A2 for ``p`` and return the bound p(1)/f_0.

    Exact polynomials are checked in rational arithmetic, with the sign
    on [-1, s] decided by real-root isolation. Float polynomials are checked
    at endpoints, critical points and a dense grid with relative tolerance
    ``tol``.
    """
    _check_ns(n, s)
    if p.is_zero:
        raise PreconditionViolated("polynomial must be nonzero")
    exact = p.exact and isinstance(s, Rational)
    if not exact:
        p = p.to_float()

    if exact:
        _check_a1_exact(p, s)
    else:
        _check_a1_float(p, s, tol, samples)
    expansion = gegenbauer_expand(n, p)
    _check_a2(expansion, tol)

    value = p(Fraction(1)) / expansion.f0 if exact else float(p(1.0)) / expansion.f0
    logger.debug("Delsarte certificate verified: n=%d s=%s bound=%s", n, s, value)
    return BoundReport(
        n=n,
        s=s,
        method="lp",
        value=value,
        rigorous=True,
        certificate=certificate_payload(n, s, p, expansion, value, True),
        notes=() if exact else (f"verified at tolerance {tol:g}",),
    )


def chebyshev_lobatto(lo: float, hi: float, size: int) -> np.ndarray:
    """Chebyshev-Lobatto points on [lo, hi], both endpoints included, ascending."""
    j = np.arange(size)
    x = -np.cos(np.pi * j / (size - 1))
    return lo + (hi - lo) * (x + 1.0) / 2.0


def lp_search(
    n: int,
    s,
    degree: int | None = None,
    grid_size: int | None = None,
    settings: Settings = DEFAULTS,
) -> BoundReport:
    """Best degree-``degree`` polynomial on a grid of [-1, s], repaired and verified.

    The LP fixes f_0 = 1 and minimises f(1) = 1 + sum f_k subject to
    sum_k f_k P_k(t_j) <= -1 at the grid points. It is solved through its
    dual, which has one row per degree and a nonnegative right-hand side;
    the primal coefficients come back as shadow prices.
    """
    _check_ns(n, s)
    degree = default_degree(n) if degree is None else degree
    grid_size = settings.lp.grid_size if grid_size is None else grid_size
    if not MIN_DEGREE <= degree <= MAX_DEGREE:
        raise PreconditionViolated(f"degree must be in {MIN_DEGREE}..{MAX_DEGREE}, got {degree}")
    if grid_size < 10 * degree:
        raise PreconditionViolated(f"grid_size must be >= 10 * degree = {10 * degree}, got {grid_size}")
    s_float = float(s)

    grid = chebyshev_lobatto(-1.0, s_float, grid_size)
    values = gegenbauer_values(n, degree, grid)[1:]  # (degree, grid_size)

    # Dual: max sum y_j  s.t.  -sum_j y_j P_k(t_j) <= 1 (k = 1..degree), y >= 0.
    problem = LpProblem(objective=-np.ones(grid_size), a_ub=-values, b_ub=np.ones(degree))
    result = simplex_solve(
        problem,
        max_iterations=settings.lp.max_iterations,
        pivot_tol=settings.lp.pivot_tolerance,
    )
    if result.status == UNBOUNDED:
        raise LpInfeasible(f"grid LP for n={n}, s={s}, degree={degree} has no feasible polynomial")
    if result.status == INFEASIBLE:
        raise LpInfeasible(f"dual grid LP for n={n}, s={s}, degree={degree} is infeasible")
    result.raise_for_status()
    lp_value = 1.0 - result.objective
    coeffs = np.maximum(-result.duals_ub, 0.0)
    logger.info(
        "LP n=%d s=%g degree=%d grid=%d: %d iterations, objective %.10g",
        n, s_float, degree, grid_size, result.iterations, lp_value,
    )

    f = GegenbauerExpansion(n, (1.0, *(float(c) for c in coeffs))).reconstruct()
    _, excursion = maximize_on(f, -1.0, s_float, settings.lp.check_points)
    slack = 0.0
    if excursion > 0.0:
        slack = excursion * (1.0 + 1e-9) + 1e-15
        f = f - slack
    logger.info("Post-verification slack %.3g", slack)
    if 1.0 - slack <= 0.0:
        raise PostVerificationFailed(f"slack {slack:.3g} swallows f_0; increase grid_size")

    try:
        report = verify_theorem1(n, s, f, settings.tolerances.condition, settings.lp.check_points)
    except ConditionViolated as exc:
        raise PostVerificationFailed(f"grid solution fails the continuum check: {exc}") from exc

    certificate = dict(report.certificate)
    certificate.update({"grid_size": grid_size, "lp_objective": lp_value, "slack": slack})
    return BoundReport(
        n=n,
        s=s,
        method="lp",
        value=report.value,
        rigorous=report.rigorous,
        certificate=certificate,
        notes=report.notes,
    )


def lp_search_best(
    n: int,
    s,
    degrees=None,
    grid_size: int | None = None,
    workers: int = 1,
    settings: Settings = DEFAULTS,
) -> BoundReport:
    """Run ``lp_search`` for several degrees and keep the smallest verified bound.

    Ties go to the lower degree; output does not depend on ``workers``.
    """
    if degrees is None:
        base = default_degree(n)
        degrees = range(base, max(base, SEARCH_DEGREE_CAP) + 1, 2)
    degrees = sorted(set(degrees))

    def attempt(d):
        try:
            return lp_search(n, s, d, grid_size, settings)
        except KissingError as exc:
            logger.warning("lp_search n=%d s=%s degree=%d failed: %s", n, s, d, exc)
            return exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(attempt, degrees))
    else:
        outcomes = [attempt(d) for d in degrees]

    reports = [r for r in outcomes if isinstance(r, BoundReport)]
    if not reports:
        raise outcomes[-1]
    return min(reports, key=lambda r: (r.value, r.certificate["degree"]))
