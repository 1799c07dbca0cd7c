"""Every built-in code must respect every rigorous upper bound at its own s(C)."""

import pytest

from kissing.analysis import builtin_spherical_code, max_inner_product
from kissing.geometric import coxeter_boroczky_bound, fejes_toth_cardinality_bound
from kissing.levenshtein import levenshtein_bound


CODES = [
    "tetrahedron",
    "octahedron",
    "icosahedron",
    "cell600",
    "d4_roots",
    "e8_roots",
    "simplex(5)",
    "cross_polytope(6)",
    "dn_roots(5)",
]


@pytest.mark.parametrize("name", CODES)
def test_codes_respect_levenshtein(name):
    code = builtin_spherical_code(name)
    report = levenshtein_bound(code.n, max_inner_product(code), certify=False)
    assert len(code) <= report.value + 1e-6


@pytest.mark.parametrize("name", ["icosahedron", "cell600", "d4_roots"])
def test_codes_respect_coxeter_boroczky(name):
    code = builtin_spherical_code(name)
    report = coxeter_boroczky_bound(code.n, max_inner_product(code))
    assert len(code) <= report.value + report.certificate["error"] + 1e-6


@pytest.mark.parametrize("name", ["tetrahedron", "octahedron", "icosahedron"])
def test_codes_respect_fejes_toth(name):
    code = builtin_spherical_code(name)
    assert len(code) <= fejes_toth_cardinality_bound(max_inner_product(code)).value
