import math

import pytest

from kissing.analysis import builtin_spherical_code, min_distance
from kissing.config import GeometricSettings
from kissing.errors import DomainError, InvalidDimension, OutOfRange, PreconditionViolated
from kissing.geometric import (
    SchlafliContext,
    _adaptive_simpson,
    coxeter_boroczky_bound,
    fejes_toth_bound,
    fejes_toth_cardinality_bound,
    lower_limit,
    schlafli_F,
)


@pytest.mark.parametrize("M,name", [(3, "triangle"), (4, "tetrahedron"), (6, "octahedron"), (12, "icosahedron")])
def test_fejes_toth_sharp_cases(M, name):
    code = builtin_spherical_code(name)
    assert len(code) == M
    assert fejes_toth_bound(M) == pytest.approx(min_distance(code), abs=1e-9)


def test_fejes_toth_bound_validation():
    with pytest.raises(PreconditionViolated):
        fejes_toth_bound(2)


def test_fejes_toth_kissing_bound():
    report = fejes_toth_cardinality_bound(0.5)
    assert report.value == 13
    assert report.n == 3
    assert report.rigorous


def test_adaptive_simpson():
    value, error, capped = _adaptive_simpson(math.sin, 0.0, math.pi, 1e-10, 30)
    assert value == pytest.approx(2.0, abs=1e-9)
    assert error < 1e-9
    assert not capped


def test_adaptive_simpson_reports_depth_cap():
    _, _, capped = _adaptive_simpson(lambda x: math.sqrt(x), 0.0, 1.0, 1e-14, 3)
    assert capped


def test_low_schlafli_levels():
    assert schlafli_F(0, 0.4) == 1.0
    assert schlafli_F(1, 0.4) == 1.0
    assert schlafli_F(2, 0.3) == pytest.approx(0.6 / math.pi, rel=1e-9)
    alpha = 0.7
    assert schlafli_F(3, alpha) == pytest.approx(2.0 / math.pi * (alpha - math.pi / 6.0), rel=1e-8)


def test_schlafli_vanishes_at_lower_limit():
    assert schlafli_F(5, lower_limit(5)) == pytest.approx(0.0, abs=1e-12)


def test_schlafli_domain():
    with pytest.raises(DomainError):
        schlafli_F(4, lower_limit(4) - 0.01)
    with pytest.raises(DomainError):
        schlafli_F(4, 2.0)
    with pytest.raises(PreconditionViolated):
        SchlafliContext().evaluate(-1, 0.5)


def test_schlafli_increases_in_alpha():
    context = SchlafliContext()
    values = [context.evaluate(6, a).value for a in (0.70, 0.75, 0.80, 0.85)]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_coxeter_boroczky_600_cell():
    report = coxeter_boroczky_bound(4, math.cos(math.pi / 5), tol=1e-6)
    assert report.value == pytest.approx(120.0, abs=0.5)
    assert report.certificate["alpha"] == pytest.approx(math.pi / 5)
    assert report.rigorous


def test_coxeter_boroczky_three_dimensions():
    alpha = 0.5 * math.acos(1.0 / 3.0)
    report = coxeter_boroczky_bound(3, 0.5)
    assert report.value == pytest.approx(2.0 * alpha / (alpha - math.pi / 6.0), rel=1e-6)


def test_coxeter_boroczky_uses_tabulated_levels():
    report = coxeter_boroczky_bound(8, 0.5)
    assert 240 <= report.value < 400
    assert report.certificate["error"] >= 0.0


def test_coxeter_boroczky_flags_depth_cap():
    report = coxeter_boroczky_bound(4, 0.5, tol=1e-14, settings=GeometricSettings(max_depth=2))
    assert not report.rigorous
    assert report.notes


def test_coxeter_boroczky_validation():
    with pytest.raises(InvalidDimension):
        coxeter_boroczky_bound(2, 0.5)
    with pytest.raises(OutOfRange):
        coxeter_boroczky_bound(4, 0.0)
