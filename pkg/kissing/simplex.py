"""Dense-tableau two-phase simplex.

Minimises ``c @ x`` subject to ``A_ub @ x <= b_ub``, ``A_eq @ x == b_eq`` and
``x >= lower``. Entering columns follow Dantzig's rule with Bland's
lowest-index rule on ties; a run of degenerate pivots switches to Bland's rule
outright. The ratio test breaks ties on the lowest basic variable index, so
results are deterministic for identical input.

A basis is reported optimal only after it has been re-factorised from the
original data and passes primal feasibility, dual feasibility and a zero
duality gap. A basis that fails is re-priced and pivoting resumes; if no
certified basis comes out of that, the whole solve is repeated under Bland's
rule.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from kissing.errors import (
    LpInfeasible,
    LpNumericalFailure,
    LpUnbounded,
    MaxIterationsExceeded,
    PreconditionViolated,
)


logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
MAX_ITERATIONS = "max-iterations"
NUMERICAL = "numerical-failure"

DEGENERATE_STREAK = 50
MAX_REFRESHES = 5
# relative residual tolerated when the final basis is re-factorised
RESIDUAL_TOL = 1e-7


def _as_matrix(a, ncols: int) -> np.ndarray:
    if a is None:
        return np.zeros((0, ncols))
    return np.atleast_2d(np.asarray(a, dtype=float)).reshape(-1, ncols)


def _as_vector(b, size: int) -> np.ndarray:
    if b is None:
        return np.zeros(size)
    return np.asarray(b, dtype=float).reshape(size)


@dataclass(frozen=True)
class LpProblem:
    objective: np.ndarray
    a_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    a_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    lower: np.ndarray | None = None

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float).ravel()
        nv = c.size
        a_ub = _as_matrix(self.a_ub, nv)
        a_eq = _as_matrix(self.a_eq, nv)
        b_ub = _as_vector(self.b_ub, a_ub.shape[0])
        b_eq = _as_vector(self.b_eq, a_eq.shape[0])
        lower = _as_vector(self.lower, nv)
        for name, arr in [("objective", c), ("a_ub", a_ub), ("b_ub", b_ub),
                          ("a_eq", a_eq), ("b_eq", b_eq), ("lower", lower)]:
            if not np.all(np.isfinite(arr)):
                raise PreconditionViolated(f"LP {name} has non-finite entries")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "a_ub", a_ub)
        object.__setattr__(self, "b_ub", b_ub)
        object.__setattr__(self, "a_eq", a_eq)
        object.__setattr__(self, "b_eq", b_eq)
        object.__setattr__(self, "lower", lower)

    @property
    def num_vars(self) -> int:
        return self.objective.size


@dataclass(frozen=True)
class SimplexResult:
    status: str
    x: np.ndarray | None = None
    objective: float | None = None
    duals_ub: np.ndarray | None = None
    duals_eq: np.ndarray | None = None
    iterations: int = 0
    notes: tuple[str, ...] = field(default_factory=tuple)

    def raise_for_status(self) -> "SimplexResult":
        if self.status == INFEASIBLE:
            raise LpInfeasible("linear program is infeasible")
        if self.status == UNBOUNDED:
            raise LpUnbounded("linear program is unbounded")
        if self.status == MAX_ITERATIONS:
            raise MaxIterationsExceeded(f"simplex stopped after {self.iterations} iterations")
        if self.status == NUMERICAL:
            raise LpNumericalFailure("no basis passed the optimality check")
        return self


@dataclass(frozen=True)
class _StandardForm:
    """Rows over ``[x | slacks]``, sign-flipped so that every rhs is >= 0."""

    a: np.ndarray
    rhs: np.ndarray
    signs: np.ndarray
    costs: np.ndarray
    num_vars: int
    num_ub: int

    @classmethod
    def build(cls, problem: LpProblem) -> "_StandardForm":
        nv = problem.num_vars
        a_ub, a_eq = problem.a_ub, problem.a_eq
        m_ub = a_ub.shape[0]
        a = np.zeros((m_ub + a_eq.shape[0], nv + m_ub))
        a[:m_ub, :nv] = a_ub
        a[:m_ub, nv:] = np.eye(m_ub)
        a[m_ub:, :nv] = a_eq
        rhs = np.concatenate([problem.b_ub - a_ub @ problem.lower, problem.b_eq - a_eq @ problem.lower])
        signs = np.where(rhs < 0.0, -1.0, 1.0)
        costs = np.zeros(nv + m_ub)
        costs[:nv] = problem.objective
        return cls(a * signs[:, None], rhs * signs, signs, costs, nv, m_ub)


class _Tableau:
    """Constraint rows ``T[:m]`` and reduced-cost row ``T[m]``; last column is the rhs."""

    def __init__(self, table: np.ndarray, basis: list[int], pivot_tol: float, bland: bool = False):
        self.T = table
        self.basis = basis
        self.pivot_tol = pivot_tol
        self.bland = bland
        self.degenerate = 0

    @classmethod
    def from_basis(cls, a, rhs, costs, basis, pivot_tol: float, bland: bool) -> "_Tableau":
        """Fresh tableau B^-1 [A | b] for ``basis``; raises LinAlgError when B is singular."""
        body = np.linalg.solve(a[:, basis], np.column_stack([a, rhs]))
        body[:, basis] = np.eye(len(basis))
        tab = cls(np.vstack([body, np.zeros(body.shape[1])]), list(basis), pivot_tol, bland)
        tab.set_costs(costs)
        return tab

    @property
    def m(self) -> int:
        return len(self.basis)

    def set_costs(self, costs: np.ndarray) -> None:
        m = self.m
        self.T[m, :-1] = costs
        self.T[m, -1] = 0.0
        for i, j in enumerate(self.basis):
            if costs[j] != 0.0:
                self.T[m] -= costs[j] * self.T[i]

    def pivot(self, row: int, col: int) -> None:
        T = self.T
        T[row] /= T[row, col]
        column = T[:, col].copy()
        column[row] = 0.0
        T -= np.outer(column, T[row])
        self.basis[row] = col

    def entering(self, allowed: int, tol: float) -> int | None:
        reduced = self.T[self.m, :allowed]
        candidates = np.flatnonzero(reduced < -tol)
        if candidates.size == 0:
            return None
        if self.bland:
            return int(candidates[0])
        # argmin returns the lowest index among equal values
        return int(candidates[np.argmin(reduced[candidates])])

    def leaving(self, col: int) -> int | None:
        column = self.T[: self.m, col]
        rows = np.flatnonzero(column > self.pivot_tol)
        if rows.size == 0:
            return None
        # rounding can leave a basic value slightly below zero; never step backwards
        ratios = np.maximum(self.T[rows, -1], 0.0) / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
        return int(min(ties, key=lambda r: self.basis[r]))

    def run(self, allowed: int, max_iterations: int, used: int) -> tuple[str, int]:
        iterations = used
        while True:
            col = self.entering(allowed, self.pivot_tol)
            if col is None:
                return OPTIMAL, iterations
            row = self.leaving(col)
            if row is None:
                return UNBOUNDED, iterations
            if iterations >= max_iterations:
                return MAX_ITERATIONS, iterations
            if self.T[row, -1] <= self.pivot_tol:
                self.degenerate += 1
                if self.degenerate > DEGENERATE_STREAK and not self.bland:
                    logger.debug("Switching to Bland's rule after %d degenerate pivots", self.degenerate)
                    self.bland = True
            else:
                self.degenerate = 0
            self.pivot(row, col)
            iterations += 1


@dataclass(frozen=True)
class _BasisCheck:
    x: np.ndarray
    y: np.ndarray
    primal: bool
    dual: bool
    gap: float


def _check_basis(a, rhs, costs, basis, pivot_tol: float) -> _BasisCheck | None:
    """Re-factorise ``basis`` from the original rows; None when B is singular."""
    b = a[:, basis]
    try:
        x_basic = np.linalg.solve(b, rhs)
        y = np.linalg.solve(b.T, costs[basis])
    except np.linalg.LinAlgError:
        return None
    x = np.zeros(a.shape[1])
    x[basis] = x_basic
    scale = max(1.0, float(np.abs(rhs).max(initial=0.0)))
    reduced = costs - a.T @ y
    return _BasisCheck(
        x=x,
        y=y,
        primal=bool(x_basic.min(initial=0.0) >= -RESIDUAL_TOL * scale),
        dual=bool(reduced.min(initial=0.0) >= -10.0 * pivot_tol),
        gap=abs(float(costs @ x - rhs @ y)),
    )


def _drive_out_artificials(tab: _Tableau, n_std: int, pivot_tol: float) -> tuple[list[int], list[int]]:
    """Pivot zero-level artificials out on their largest entry; rows with none left are redundant."""
    keep = []
    for i in range(tab.m):
        if tab.basis[i] >= n_std:
            row = np.abs(tab.T[i, :n_std])
            row[[j for j in tab.basis if j < n_std]] = 0.0
            j = int(np.argmax(row))
            if row[j] <= pivot_tol:
                continue
            tab.T[i, -1] = 0.0
            tab.pivot(i, j)
        keep.append(i)
    return keep, [tab.basis[i] for i in keep]


def _finish(problem: LpProblem, form: _StandardForm, keep: list[int], check: _BasisCheck,
            iterations: int) -> SimplexResult:
    x = np.maximum(check.x[: form.num_vars], 0.0) + problem.lower
    scale = max(
        1.0,
        float(np.abs(form.rhs).max(initial=0.0)),
        float(np.abs(form.a).max(initial=0.0)) * float(np.abs(x).max(initial=0.0)),
    )
    excess = max(
        float((problem.a_ub @ x - problem.b_ub).max(initial=0.0)),
        float(np.abs(problem.a_eq @ x - problem.b_eq).max(initial=0.0)),
    )
    if excess > RESIDUAL_TOL * scale:
        logger.debug("Certified basis still violates a constraint by %.3g", excess)
        return SimplexResult(status=NUMERICAL, iterations=iterations)
    y = np.zeros(form.a.shape[0])
    y[keep] = check.y
    y *= form.signs
    return SimplexResult(
        status=OPTIMAL,
        x=x,
        objective=float(problem.objective @ x),
        duals_ub=y[: form.num_ub],
        duals_eq=y[form.num_ub:],
        iterations=iterations,
    )


def _solve(problem: LpProblem, form: _StandardForm, max_iterations: int, pivot_tol: float,
           feasibility_tol: float, bland: bool) -> SimplexResult:
    m, n_std = form.a.shape
    artificial_rows = [i for i in range(m) if i >= form.num_ub or form.signs[i] < 0]
    iterations = 0
    keep = list(range(m))
    basis = [form.num_vars + i for i in range(m)]

    if artificial_rows:
        n_art = len(artificial_rows)
        table = np.zeros((m + 1, n_std + n_art + 1))
        table[:m, :n_std] = form.a
        table[:m, -1] = form.rhs
        for k, i in enumerate(artificial_rows):
            table[i, n_std + k] = 1.0
            basis[i] = n_std + k
        tab = _Tableau(table, basis, pivot_tol, bland)
        phase1 = np.zeros(n_std + n_art)
        phase1[n_std:] = 1.0
        tab.set_costs(phase1)
        status, iterations = tab.run(n_std + n_art, max_iterations, iterations)
        if status == MAX_ITERATIONS:
            return SimplexResult(status=status, iterations=iterations)
        if status != OPTIMAL:
            return SimplexResult(status=NUMERICAL, iterations=iterations)
        infeasibility = -tab.T[tab.m, -1]
        if infeasibility > feasibility_tol * max(1.0, float(form.rhs.max(initial=0.0))):
            logger.info("Phase 1 ended with infeasibility %.3g", infeasibility)
            return SimplexResult(status=INFEASIBLE, iterations=iterations)
        keep, basis = _drive_out_artificials(tab, n_std, pivot_tol)

    a, rhs = form.a[keep], form.rhs[keep]
    rhs_scale = max(1.0, float(np.abs(rhs).max(initial=0.0)))
    for refresh in range(MAX_REFRESHES + 1):
        try:
            tab = _Tableau.from_basis(a, rhs, form.costs, basis, pivot_tol, bland)
        except np.linalg.LinAlgError:
            logger.debug("Basis matrix is singular")
            return SimplexResult(status=NUMERICAL, iterations=iterations)
        values = tab.T[:-1, -1]
        if values.min(initial=0.0) < -RESIDUAL_TOL * rhs_scale:
            logger.debug("Basis is primal infeasible after re-factorisation")
            return SimplexResult(status=NUMERICAL, iterations=iterations)
        tab.T[:-1, -1] = np.maximum(values, 0.0)

        status, iterations = tab.run(n_std, max_iterations, iterations)
        if status != OPTIMAL:
            return SimplexResult(status=status, iterations=iterations)
        basis = list(tab.basis)
        check = _check_basis(a, rhs, form.costs, basis, pivot_tol)
        if check is None or not check.primal:
            return SimplexResult(status=NUMERICAL, iterations=iterations)
        objective_scale = max(1.0, abs(float(form.costs @ check.x)))
        if check.dual and check.gap <= RESIDUAL_TOL * objective_scale:
            return _finish(problem, form, keep, check, iterations)
        logger.debug("Re-pricing after a failed dual check (refresh %d)", refresh + 1)
    return SimplexResult(status=NUMERICAL, iterations=iterations)


def simplex_solve(
    problem: LpProblem,
    max_iterations: int = 50000,
    pivot_tol: float = 1e-9,
    feasibility_tol: float = 1e-9,
) -> SimplexResult:
    """Solve ``problem``; infeasible/unbounded outcomes are reported as a status."""
    form = _StandardForm.build(problem)
    result = _solve(problem, form, max_iterations, pivot_tol, feasibility_tol, bland=False)
    if result.status == NUMERICAL:
        logger.info("Simplex basis failed its optimality check; solving again under Bland's rule")
        result = _solve(problem, form, max_iterations, pivot_tol, feasibility_tol, bland=True)
    if result.status == OPTIMAL:
        logger.debug("Simplex optimal after %d iterations, objective %.12g", result.iterations, result.objective)
    return result
