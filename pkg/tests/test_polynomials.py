from fractions import Fraction

import numpy as np
import pytest
from scipy.special import eval_gegenbauer, eval_jacobi

from kissing.errors import InvalidDimension, NoRealRoot, OutOfRange
from kissing.polynomials import (
    GegenbauerExpansion,
    JacobiParams,
    Polynomial,
    gegenbauer,
    gegenbauer_derivative_values,
    gegenbauer_expand,
    gegenbauer_values,
    greatest_zero,
    jacobi_adjacent,
    maximize_on,
    real_roots_in,
)


GRID = np.linspace(-1.0, 1.0, 41)


def test_polynomial_trims_and_keeps_exactness():
    p = Polynomial((Fraction(1), Fraction(2), Fraction(0)))
    assert p.degree == 1
    assert p.exact
    assert (p * p).coeffs == (1, 4, 4)
    assert (p * p).exact
    assert not (p * Polynomial((0.5,))).exact
    assert Polynomial(()).is_zero
    assert p(Fraction(1, 2)) == 2


def test_polynomial_divmod_and_derivative():
    t = Polynomial((Fraction(0), Fraction(1)))
    p = (t - Fraction(1, 3)) * (t + 2)
    q, r = p.divmod(t - Fraction(1, 3))
    assert q.coeffs == (2, 1)
    assert r.is_zero
    assert p.derivative().coeffs == (Fraction(5, 3), 2)


@pytest.mark.parametrize("n", [3, 4, 5, 8, 24])
@pytest.mark.parametrize("k", [0, 1, 2, 5, 9])
def test_gegenbauer_matches_scipy(n, k):
    lam = (n - 2) / 2
    expected = eval_gegenbauer(k, lam, GRID) / eval_gegenbauer(k, lam, 1.0)
    assert gegenbauer(n, k)(GRID) == pytest.approx(expected, abs=1e-10)
    assert gegenbauer(n, k, exact=True)(1) == 1


@pytest.mark.parametrize("n", range(3, 25))
def test_gegenbauer_values_recurrence(n):
    values = gegenbauer_values(n, 15, GRID)
    for k in range(13):
        assert values[k] == pytest.approx(gegenbauer(n, k)(GRID), abs=1e-10)
    lam = (n - 2) / 2
    for k in range(16):
        expected = eval_gegenbauer(k, lam, GRID) / eval_gegenbauer(k, lam, 1.0)
        assert values[k] == pytest.approx(expected, abs=1e-10)
    for j in range(1, 15):
        residual = (j + n - 2) * values[j + 1] - (2 * j + n - 2) * GRID * values[j] + j * values[j - 1]
        assert np.max(np.abs(residual)) < 1e-10


def test_gegenbauer_derivative_values():
    deriv = gegenbauer_derivative_values(5, 8, GRID)
    for k in range(9):
        assert deriv[k] == pytest.approx(gegenbauer(5, k).derivative()(GRID), abs=1e-9)


def test_gegenbauer_rejects_bad_input():
    with pytest.raises(InvalidDimension):
        gegenbauer(2, 3)
    with pytest.raises(OutOfRange):
        gegenbauer(3, -1)


@pytest.mark.parametrize("n", [3, 4, 9])
def test_expand_t_squared_exactly(n):
    t2 = Polynomial((Fraction(0), Fraction(0), Fraction(1)))
    expansion = gegenbauer_expand(n, t2)
    assert expansion.coeffs == (Fraction(1, n), 0, Fraction(n - 1, n))


@pytest.mark.parametrize("n", [3, 8, 24])
def test_expansion_round_trip(n):
    rng = np.random.default_rng(n)
    p = Polynomial(tuple(rng.normal(size=10)))
    back = gegenbauer_expand(n, p).reconstruct()
    assert np.max(np.abs(np.array(back.coeffs) - np.array(p.coeffs))) < 1e-12


@pytest.mark.parametrize("n", [3, 4, 8, 16, 24])
def test_expansion_round_trip_degree_15(n):
    rng = np.random.default_rng(100 + n)
    coeffs = rng.normal(size=16)
    back = gegenbauer_expand(n, Polynomial(tuple(coeffs))).reconstruct()
    assert back.degree == 15
    assert np.max(np.abs(np.array(back.coeffs) - coeffs)) < 1e-10 * np.abs(coeffs).max()


def test_expansion_value_at_one():
    expansion = GegenbauerExpansion(4, (Fraction(1), Fraction(2), Fraction(3)))
    assert expansion.value_at_one() == 6
    assert expansion.reconstruct()(1) == 6


@pytest.mark.parametrize("n", [3, 5, 8])
@pytest.mark.parametrize("a,b", [(0, 0), (1, 0), (1, 1)])
def test_jacobi_matches_scipy(n, a, b):
    params = JacobiParams(n, a, b)
    for k in range(6):
        expected = eval_jacobi(k, float(params.alpha), float(params.beta), GRID)
        assert jacobi_adjacent(params, k)(GRID) == pytest.approx(expected, rel=1e-10, abs=1e-10)


def test_jacobi_params_validation():
    with pytest.raises(OutOfRange):
        JacobiParams(5, 2, 0)
    assert JacobiParams(8, 1, 0).alpha == Fraction(7, 2)
    assert JacobiParams(8, 1, 0).beta == Fraction(5, 2)


def test_greatest_zero():
    assert greatest_zero(Polynomial((-0.25, 0.0, 1.0))) == pytest.approx(0.5, abs=1e-14)
    with pytest.raises(NoRealRoot):
        greatest_zero(Polynomial((1.0, 0.0, 1.0)))


def test_real_roots_and_maximum():
    p = Polynomial.from_roots([-0.5, 0.25, 0.75])
    assert real_roots_in(p, -1.0, 0.5) == pytest.approx([-0.5, 0.25])
    witness, value = maximize_on(-(Polynomial((-0.3, 1.0)) ** 2), -1.0, 1.0)
    assert witness == pytest.approx(0.3)
    assert value == pytest.approx(0.0, abs=1e-15)
