from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from conftest import HALF, sharp_polynomial_8, sharp_polynomial_24
from kissing.errors import ConditionViolated, PreconditionViolated
from kissing.levenshtein import levenshtein_bound
from kissing.lp import chebyshev_lobatto, lp_search, lp_search_best, verify_theorem1
from kissing.polynomials import Polynomial, gegenbauer_values


@pytest.mark.parametrize("n,poly,expected", [(8, sharp_polynomial_8, 240), (24, sharp_polynomial_24, 196560)])
def test_sharp_certificates_exact(n, poly, expected):
    report = verify_theorem1(n, HALF, poly())
    assert report.value == expected
    assert report.rigorous
    assert all(Fraction(c) >= 0 for c in report.certificate["gegenbauer_coeffs_exact"])
    assert report.certificate["bound_exact"] == str(expected)


def test_sharp_certificate_float():
    report = verify_theorem1(8, 0.5, sharp_polynomial_8().to_float())
    assert report.value == pytest.approx(240, rel=1e-10)
    assert report.floor_value == 240
    assert set(report.certificate) >= {"n", "s", "degree", "monomial_coeffs", "gegenbauer_coeffs", "bound", "rigorous"}


@pytest.mark.parametrize("s", [0.5, HALF])
def test_positive_polynomial_fails_a1(s):
    t = Polynomial((Fraction(0), Fraction(1)))
    with pytest.raises(ConditionViolated) as info:
        verify_theorem1(3, s, t)
    assert info.value.condition == "A1"


def test_negative_constant_term_fails_a2():
    # (t + 1)(t - 1/2) is <= 0 on [-1, 1/2] but has f_0 = -1/6 for n = 3
    p = Polynomial.from_roots([-1, HALF])
    with pytest.raises(ConditionViolated) as info:
        verify_theorem1(3, HALF, p)
    assert info.value.condition == "A2"
    assert info.value.witness == 0


def test_zero_polynomial_rejected():
    with pytest.raises(PreconditionViolated):
        verify_theorem1(4, 0.5, Polynomial((0.0,)))


def test_chebyshev_lobatto():
    grid = chebyshev_lobatto(-1.0, 0.5, 9)
    assert grid[0] == pytest.approx(-1.0)
    assert grid[-1] == pytest.approx(0.5)
    assert np.all(np.diff(grid) > 0)


def test_grid_lp_matches_linprog():
    n, s, degree, size = 4, 0.5, 5, 200
    report = lp_search(n, s, degree=degree, grid_size=size)
    grid = chebyshev_lobatto(-1.0, s, size)
    values = gegenbauer_values(n, degree, grid)[1:]
    oracle = linprog(np.ones(degree), A_ub=values.T, b_ub=-np.ones(size), bounds=(0, None), method="highs")
    assert oracle.status == 0
    assert report.certificate["lp_objective"] == pytest.approx(1.0 + oracle.fun, rel=1e-7)
    assert report.value >= report.certificate["lp_objective"] - 1e-9


@pytest.mark.parametrize("n,ceiling", [(3, 13.19), (4, 25.60), (5, 46.40)])
def test_lp_improves_on_levenshtein(n, ceiling):
    report = lp_search_best(n, 0.5)
    assert report.rigorous
    assert report.value <= ceiling
    assert report.value <= float(levenshtein_bound(n, 0.5, certify=False).value)
    assert report.certificate["degree"] <= 13


def test_lp_search_best_independent_of_workers():
    serial = lp_search_best(4, 0.5, degrees=[5, 7], grid_size=400)
    threaded = lp_search_best(4, 0.5, degrees=[7, 5], grid_size=400, workers=2)
    assert serial.value == threaded.value
    assert serial.certificate["degree"] == threaded.certificate["degree"]


def test_lp_search_validates_parameters():
    with pytest.raises(PreconditionViolated):
        lp_search(4, 0.5, degree=2)
    with pytest.raises(PreconditionViolated):
        lp_search(4, 0.5, degree=9, grid_size=50)


def test_grid_refinement():
    n, s, degree = 4, 0.5, 7
    # nested Chebyshev-Lobatto grids: 199, 4 * 199 and 16 * 199 intervals
    reports = [lp_search(n, s, degree=degree, grid_size=size) for size in (200, 797, 3185)]
    objectives = [r.certificate["lp_objective"] for r in reports]
    values = [r.value for r in reports]
    assert all(fine >= coarse - 1e-9 * coarse for coarse, fine in zip(objectives, objectives[1:]))
    assert all(fine <= coarse + 1e-6 * coarse for coarse, fine in zip(values, values[1:]))
    levenshtein = float(levenshtein_bound(n, s, certify=False).value)
    assert all(objective <= value <= levenshtein + 1e-9 for objective, value in zip(objectives, values))
