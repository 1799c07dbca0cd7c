"""Minimal vectors of the D_n and E8 lattices, scaled to the unit sphere."""

import itertools
import math

import numpy as np

from kissing.catalog import SPHERICAL, CatalogEntry
from kissing.errors import OutOfRange


def dn_roots(n: int) -> np.ndarray:
    """The 2n(n-1) vectors +-e_i +- e_j of D_n, normalised."""
    if n < 3:
        raise OutOfRange(f"D_n needs n >= 3, got {n}")
    rows = []
    for i, j in itertools.combinations(range(n), 2):
        for si, sj in itertools.product((1.0, -1.0), repeat=2):
            v = np.zeros(n)
            v[i], v[j] = si, sj
            rows.append(v)
    return np.array(rows) / math.sqrt(2.0)


def d4_roots() -> np.ndarray:
    return dn_roots(4)


def e8_roots() -> np.ndarray:
    """D_8 roots plus the 128 half-integer vectors with an even number of minus signs."""
    half = [
        np.array(signs) / 2.0
        for signs in itertools.product((1.0, -1.0), repeat=8)
        if sum(1 for x in signs if x < 0) % 2 == 0
    ]
    return np.vstack([dn_roots(8), np.array(half) / math.sqrt(2.0)])


DN_ROOTS = CatalogEntry(
    name="dn_roots",
    kind=SPHERICAL,
    build=dn_roots,
    expected=lambda n: (n, 2 * n * (n - 1), 0.5),
    parametric=True,
    description="minimal vectors of D_n",
)

D4_ROOTS = CatalogEntry(
    name="d4_roots",
    kind=SPHERICAL,
    build=d4_roots,
    expected=lambda: (4, 24, 0.5),
    description="minimal vectors of D_4 (24-cell vertices)",
)

E8_ROOTS = CatalogEntry(
    name="e8_roots",
    kind=SPHERICAL,
    build=e8_roots,
    expected=lambda: (8, 240, 0.5),
    description="minimal vectors of E_8",
)
