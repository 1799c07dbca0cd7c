"""Vertices of regular polytopes as spherical codes."""

import itertools
import math

import numpy as np
from scipy.linalg import null_space

from kissing.catalog import SPHERICAL, CatalogEntry
from kissing.errors import OutOfRange


PHI = (1.0 + math.sqrt(5.0)) / 2.0


def _unit_rows(rows) -> np.ndarray:
    rows = np.asarray(rows, dtype=float)
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


def simplex(n: int) -> np.ndarray:
    """n + 1 vertices of the regular simplex in R^n."""
    if n < 1:
        raise OutOfRange(f"simplex needs n >= 1, got {n}")
    centred = np.eye(n + 1) - 1.0 / (n + 1)
    basis = null_space(np.ones((1, n + 1)))
    return _unit_rows(centred @ basis)


def cross_polytope(n: int) -> np.ndarray:
    if n < 1:
        raise OutOfRange(f"cross polytope needs n >= 1, got {n}")
    return np.vstack([np.eye(n), -np.eye(n)])


def icosahedron() -> np.ndarray:
    """Cyclic permutations of (0, +-1, +-phi)."""
    rows = []
    for a, b in itertools.product((1.0, -1.0), repeat=2):
        base = (0.0, a, b * PHI)
        for shift in range(3):
            rows.append(base[shift:] + base[:shift])
    return _unit_rows(rows)


def _even_permutations(n: int):
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        if inversions % 2 == 0:
            yield perm


def cell600() -> np.ndarray:
    """Vertices of the 600-cell: the 120 unit icosians."""
    rows = []
    for i in range(4):
        for sign in (1.0, -1.0):
            v = np.zeros(4)
            v[i] = sign
            rows.append(v)
    rows.extend(np.array(signs) / 2.0 for signs in itertools.product((1.0, -1.0), repeat=4))
    base = (PHI, 1.0, 1.0 / PHI, 0.0)
    for signs in itertools.product((1.0, -1.0), repeat=3):
        signed = (signs[0] * base[0], signs[1] * base[1], signs[2] * base[2], 0.0)
        for perm in _even_permutations(4):
            rows.append(np.array([signed[p] for p in perm]) / 2.0)
    return _unit_rows(rows)


SIMPLEX = CatalogEntry(
    name="simplex",
    kind=SPHERICAL,
    build=simplex,
    expected=lambda n: (n, n + 1, -1.0 / n),
    parametric=True,
    description="regular simplex",
)

CROSS_POLYTOPE = CatalogEntry(
    name="cross_polytope",
    kind=SPHERICAL,
    build=cross_polytope,
    expected=lambda n: (n, 2 * n, 0.0),
    parametric=True,
    description="+-e_i",
)

TRIANGLE = CatalogEntry(
    name="triangle",
    kind=SPHERICAL,
    build=lambda: simplex(2),
    expected=lambda: (2, 3, -0.5),
    description="equilateral triangle on a great circle",
)

TETRAHEDRON = CatalogEntry(
    name="tetrahedron",
    kind=SPHERICAL,
    build=lambda: simplex(3),
    expected=lambda: (3, 4, -1.0 / 3.0),
)

OCTAHEDRON = CatalogEntry(
    name="octahedron",
    kind=SPHERICAL,
    build=lambda: cross_polytope(3),
    expected=lambda: (3, 6, 0.0),
)

ICOSAHEDRON = CatalogEntry(
    name="icosahedron",
    kind=SPHERICAL,
    build=icosahedron,
    expected=lambda: (3, 12, 1.0 / math.sqrt(5.0)),
)

CELL600 = CatalogEntry(
    name="cell600",
    kind=SPHERICAL,
    build=cell600,
    expected=lambda: (4, 120, math.cos(math.pi / 5.0)),
    description="600-cell; attains A(4, cos(pi/5)) = 120",
)
