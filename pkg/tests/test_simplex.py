import numpy as np
import pytest
from scipy.optimize import linprog

from kissing.errors import LpInfeasible, LpNumericalFailure, LpUnbounded, PreconditionViolated
from kissing.lp import chebyshev_lobatto
from kissing.musin import _cut_row
from kissing.polynomials import gegenbauer_derivative_values, gegenbauer_values
from kissing.simplex import (
    INFEASIBLE,
    NUMERICAL,
    OPTIMAL,
    UNBOUNDED,
    LpProblem,
    SimplexResult,
    simplex_solve,
)


def test_two_variable_maximum():
    problem = LpProblem(objective=[-1.0, -1.0], a_ub=[[1.0, 2.0], [3.0, 1.0]], b_ub=[4.0, 6.0])
    result = simplex_solve(problem)
    assert result.status == OPTIMAL
    assert result.x == pytest.approx([1.6, 1.2])
    assert result.objective == pytest.approx(-2.8)
    assert np.all(result.duals_ub <= 1e-12)
    assert problem.b_ub @ result.duals_ub == pytest.approx(result.objective)


def test_equalities_and_lower_bounds():
    c = [2.0, 3.0, 1.0]
    a_ub = [[1.0, 1.0, 0.0]]
    b_ub = [5.0]
    a_eq = [[1.0, 1.0, 1.0]]
    b_eq = [7.0]
    lower = [1.0, 0.5, 0.0]
    result = simplex_solve(LpProblem(c, a_ub, b_ub, a_eq, b_eq, lower))
    oracle = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                     bounds=list(zip(lower, [None] * 3)), method="highs")
    assert result.status == OPTIMAL
    assert result.objective == pytest.approx(oracle.fun)
    assert result.x == pytest.approx(oracle.x)


def test_negative_rhs_rows():
    # x + y >= 2 written as -x - y <= -2
    result = simplex_solve(LpProblem([1.0, 2.0], a_ub=[[-1.0, -1.0]], b_ub=[-2.0]))
    assert result.status == OPTIMAL
    assert result.objective == pytest.approx(2.0)
    assert result.x == pytest.approx([2.0, 0.0])


@pytest.mark.parametrize("seed", range(5))
def test_random_problems_match_linprog(seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1.0, 1.0, size=(12, 6))
    b = rng.uniform(0.5, 2.0, size=12)
    c = rng.uniform(-1.0, 1.0, size=6)
    bounds = [(0.0, 3.0)] * 6
    a_full = np.vstack([a, np.eye(6)])
    b_full = np.concatenate([b, np.full(6, 3.0)])
    result = simplex_solve(LpProblem(c, a_full, b_full))
    oracle = linprog(c, A_ub=a, b_ub=b, bounds=bounds, method="highs")
    assert result.status == OPTIMAL
    assert result.objective == pytest.approx(oracle.fun, abs=1e-9)
    assert b_full @ result.duals_ub == pytest.approx(result.objective, abs=1e-9)


def test_degenerate_problem_terminates():
    # many constraints active at the origin
    a = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [2.0, 1.0], [1.0, 2.0]])
    result = simplex_solve(LpProblem([-1.0, -1.0], a, [0.0, 0.0, 0.0, 0.0, 0.0]))
    assert result.status == OPTIMAL
    assert result.objective == pytest.approx(0.0)


def test_infeasible():
    result = simplex_solve(LpProblem([1.0], a_ub=[[1.0]], b_ub=[-1.0]))
    assert result.status == INFEASIBLE
    with pytest.raises(LpInfeasible):
        result.raise_for_status()


def test_unbounded():
    result = simplex_solve(LpProblem([-1.0, 0.0], a_ub=[[0.0, 1.0]], b_ub=[1.0]))
    assert result.status == UNBOUNDED
    with pytest.raises(LpUnbounded):
        result.raise_for_status()


def test_redundant_equalities():
    problem = LpProblem([1.0, 1.0], a_eq=[[1.0, 1.0], [2.0, 2.0]], b_eq=[1.0, 2.0])
    result = simplex_solve(problem)
    assert result.status == OPTIMAL
    assert result.objective == pytest.approx(1.0)


def test_non_finite_input_rejected():
    with pytest.raises(PreconditionViolated):
        LpProblem([1.0, np.inf])


@pytest.mark.parametrize("seed", range(8))
def test_degenerate_random_problems_match_linprog(seed):
    rng = np.random.default_rng(100 + seed)
    nv = 5
    vertex = rng.uniform(0.5, 1.5, size=nv)
    # a dozen constraints tight at one vertex, plus loose ones and a >= row
    tight = rng.uniform(-1.0, 1.0, size=(12, nv))
    loose = rng.uniform(-1.0, 1.0, size=(6, nv))
    a = np.vstack([tight, loose, -np.ones((1, nv)), np.eye(nv)])
    b = np.concatenate([tight @ vertex, loose @ vertex + rng.uniform(0.1, 1.0, 6), [-1.0], np.full(nv, 4.0)])
    c = rng.uniform(-1.0, 1.0, size=nv)
    result = simplex_solve(LpProblem(c, a, b))
    oracle = linprog(c, A_ub=a, b_ub=b, bounds=(0, None), method="highs")
    assert oracle.status == 0
    assert result.status == OPTIMAL
    assert result.objective == pytest.approx(oracle.fun, abs=1e-9)
    assert np.all(a @ result.x <= b + 1e-9)
    assert b @ result.duals_ub == pytest.approx(result.objective, abs=1e-8)


@pytest.mark.parametrize("seed", range(5))
def test_random_equality_problems_match_linprog(seed):
    rng = np.random.default_rng(200 + seed)
    nv = 8
    point = rng.uniform(0.0, 1.0, size=nv)
    a_eq = rng.uniform(-1.0, 1.0, size=(3, nv))
    a_ub = rng.uniform(-1.0, 1.0, size=(10, nv))
    b_ub = a_ub @ point + rng.uniform(-0.05, 0.5, size=10)
    c = rng.uniform(0.1, 1.0, size=nv)
    problem = LpProblem(c, a_ub, b_ub, a_eq, a_eq @ point)
    oracle = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=a_eq @ point, bounds=(0, None), method="highs")
    result = simplex_solve(problem)
    if oracle.status == 2:
        assert result.status == INFEASIBLE
        return
    assert result.status == OPTIMAL
    assert result.objective == pytest.approx(oracle.fun, abs=1e-9)


def cap_cut_lp(n, s, t0, degree, cuts):
    """Minimise H over (f_1..f_d, H) with the sign, slope and cap rows of the Musin search."""
    b1_points = chebyshev_lobatto(t0, s, 300)
    b2_points = np.linspace(-1.0, t0, 150)
    b1 = gegenbauer_values(n, degree, b1_points)[1:].T
    b2 = gegenbauer_derivative_values(n, degree, b2_points)[1:].T
    rows = [np.hstack([b1, np.zeros((len(b1_points), 1))]), np.hstack([b2, np.zeros((len(b2_points), 1))])]
    rhs = [-np.ones(len(b1_points)), np.zeros(len(b2_points))]
    for cut in cuts:
        row, b = _cut_row(n, degree, cut)
        rows.append(row[None, :])
        rhs.append(np.array([b]))
    objective = np.zeros(degree + 1)
    objective[degree] = 1.0
    return objective, np.vstack(rows), np.concatenate(rhs)


@pytest.mark.parametrize(
    "cuts",
    [
        [(), (-1.0,)],
        [(), (-1.0,), (-0.95, -0.65), (-0.9, -0.8, -0.62)],
        [(), (-1.0,), (-0.8, -0.7), (-0.99, -0.7, -0.65, -0.61), (-0.75, -0.72, -0.7, -0.66, -0.64, -0.62)],
    ],
)
def test_cap_cut_lp_matches_linprog(cuts):
    c, a, b = cap_cut_lp(4, 0.5, -0.608, 9, cuts)
    oracle = linprog(c, A_ub=a, b_ub=b, bounds=(0, None), method="highs")
    result = simplex_solve(LpProblem(c, a, b))
    assert oracle.status == 0
    assert result.status == OPTIMAL
    assert result.objective == pytest.approx(oracle.fun, rel=1e-7)
    assert np.all(a @ result.x <= b + 1e-7 * np.abs(a).max() * np.abs(result.x).max())


def test_numerical_failure_status():
    with pytest.raises(LpNumericalFailure):
        SimplexResult(status=NUMERICAL).raise_for_status()
