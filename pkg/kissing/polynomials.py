"""Polynomials in the monomial basis, Gegenbauer and adjacent Jacobi families.

Coefficients are either all ``float`` or all ``fractions.Fraction``; the
latter is the exact-rational mode used to certify the sharp cases with zero
rounding error. Families are always generated in exact arithmetic and rounded
once, so float coefficients are correctly rounded.
"""

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np
import numpy.polynomial.polynomial as npp
from scipy.optimize import brentq

from kissing.errors import InvalidDimension, NoRealRoot, OutOfRange


logger = logging.getLogger(__name__)

Number = float | Fraction

ROOT_SCAN_POINTS = 4096


def _is_exact(values: Iterable) -> bool:
    return all(isinstance(v, Rational) for v in values)


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial ``sum(coeffs[i] * t**i)``.

    Trailing zeros are trimmed, so ``degree`` is the index of the last
    nonzero coefficient (0 for the zero polynomial).
    """

    coeffs: tuple

    def __post_init__(self):
        values = list(self.coeffs) or [0]
        if _is_exact(values):
            values = [Fraction(v) for v in values]
        else:
            values = [float(v) for v in values]
        while len(values) > 1 and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: Number) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "Polynomial":
        return cls((0,) * k + (c,))

    @classmethod
    def from_roots(cls, roots: Sequence[Number], leading: Number = 1) -> "Polynomial":
        p = cls.constant(leading)
        for r in roots:
            p = p * cls((-r, 1))
        return p

    # -- properties ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return isinstance(self.coeffs[0], Fraction)

    @property
    def leading(self) -> Number:
        return self.coeffs[-1]

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=object if self.exact else float)

    def to_float(self) -> "Polynomial":
        return Polynomial(tuple(float(c) for c in self.coeffs))

    def to_exact(self) -> "Polynomial":
        return Polynomial(tuple(Fraction(c) for c in self.coeffs))

    # -- arithmetic ---------------------------------------------------------

    def _pair(self, other: "Polynomial") -> tuple[np.ndarray, np.ndarray]:
        if self.exact and other.exact:
            return self.as_array(), other.as_array()
        return self.to_float().as_array(), other.to_float().as_array()

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other)

    def __add__(self, other) -> "Polynomial":
        a, b = self._pair(self._lift(other))
        return Polynomial(tuple(npp.polyadd(a, b)))

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        a, b = self._pair(self._lift(other))
        return Polynomial(tuple(npp.polysub(a, b)))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        a, b = self._pair(other)
        return Polynomial(tuple(npp.polymul(a, b)))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        result = Polynomial.constant(Fraction(1) if self.exact else 1.0)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c: Number) -> "Polynomial":
        if self.exact and isinstance(c, Rational):
            return Polynomial(tuple(x * Fraction(c) for x in self.coeffs))
        return Polynomial(tuple(float(x) * float(c) for x in self.coeffs))

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        a, b = self._pair(other)
        q, r = npp.polydiv(a, b)
        return Polynomial(tuple(q)), Polynomial(tuple(r))

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial((self.coeffs[0] * 0,))
        return Polynomial(tuple(npp.polyder(self.as_array())))

    # -- evaluation ---------------------------------------------------------

    def __call__(self, t):
        if self.exact and isinstance(t, Rational):
            return npp.polyval(Fraction(t), self.as_array())
        return npp.polyval(t, self.to_float().as_array())

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"


# ---------------------------------------------------------------------------
# Gegenbauer polynomials
# ---------------------------------------------------------------------------


def _check_dimension(n: int) -> None:
    if not isinstance(n, int) or n < 3:
        raise InvalidDimension(f"dimension must be an integer >= 3, got {n!r}")


@functools.lru_cache(maxsize=None)
def _gegenbauer_exact(n: int, k: int) -> Polynomial:
    if k == 0:
        return Polynomial((Fraction(1),))
    if k == 1:
        return Polynomial((Fraction(0), Fraction(1)))
    # (j+n-2) P_{j+1} = (2j+n-2) t P_j - j P_{j-1}, with j = k-1
    j = k - 1
    t = Polynomial((Fraction(0), Fraction(1)))
    p = t * _gegenbauer_exact(n, j) * Fraction(2 * j + n - 2, 1) - _gegenbauer_exact(n, j - 1) * Fraction(j)
    return p.scale(Fraction(1, j + n - 2))


@functools.lru_cache(maxsize=None)
def _gegenbauer_float(n: int, k: int) -> Polynomial:
    return _gegenbauer_exact(n, k).to_float()


def gegenbauer(n: int, k: int, exact: bool = False) -> Polynomial:
    """P_k^{(n)}, normalised so that P_k^{(n)}(1) = 1."""
    _check_dimension(n)
    if k < 0:
        raise OutOfRange(f"degree must be >= 0, got {k}")
    return _gegenbauer_exact(n, k) if exact else _gegenbauer_float(n, k)


def gegenbauer_values(n: int, kmax: int, t) -> np.ndarray:
    """Values P_0..P_kmax at the points ``t``, shape (kmax+1, len(t)), by recurrence."""
    _check_dimension(n)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    values = np.empty((kmax + 1, t.size))
    values[0] = 1.0
    if kmax >= 1:
        values[1] = t
    for j in range(1, kmax):
        values[j + 1] = ((2 * j + n - 2) * t * values[j] - j * values[j - 1]) / (j + n - 2)
    return values


def gegenbauer_derivative_values(n: int, kmax: int, t) -> np.ndarray:
    """Derivatives P_0'..P_kmax' at ``t`` by differentiating the recurrence."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    values = gegenbauer_values(n, kmax, t)
    deriv = np.zeros_like(values)
    if kmax >= 1:
        deriv[1] = 1.0
    for j in range(1, kmax):
        deriv[j + 1] = (
            (2 * j + n - 2) * (values[j] + t * deriv[j]) - j * deriv[j - 1]
        ) / (j + n - 2)
    return deriv


@dataclass(frozen=True)
class GegenbauerExpansion:
    """Coefficients f_0..f_m of a polynomial in the P_k^{(n)} basis."""

    n: int
    coeffs: tuple

    @property
    def f0(self) -> Number:
        return self.coeffs[0]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return _is_exact(self.coeffs)

    def value_at_one(self) -> Number:
        # P_k(1) = 1 for every k
        return sum(self.coeffs)

    def reconstruct(self) -> Polynomial:
        exact = self.exact
        total = Polynomial((Fraction(0) if exact else 0.0,))
        for k, fk in enumerate(self.coeffs):
            total = total + gegenbauer(self.n, k, exact=exact).scale(fk)
        return total


def gegenbauer_expand(n: int, p: Polynomial) -> GegenbauerExpansion:
    """Expand ``p`` in the Gegenbauer basis by peeling off leading terms."""
    _check_dimension(n)
    residual = p.as_array().copy()
    coeffs = [None] * (p.degree + 1)
    for k in range(p.degree, -1, -1):
        basis = gegenbauer(n, k, exact=p.exact).as_array()
        fk = residual[k] / basis[k]
        coeffs[k] = fk
        residual[: k + 1] = residual[: k + 1] - fk * basis
        residual[k] = 0
    if not p.exact:
        coeffs = [float(c) for c in coeffs]
    return GegenbauerExpansion(n=n, coeffs=tuple(coeffs))


# ---------------------------------------------------------------------------
# Adjacent (Jacobi) polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JacobiParams:
    """Parameters of the adjacent family: alpha = a + (n-3)/2, beta = b + (n-3)/2."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        _check_dimension(self.n)
        if self.a not in (0, 1) or self.b not in (0, 1):
            raise OutOfRange(f"a, b must be 0 or 1, got ({self.a}, {self.b})")

    @property
    def alpha(self) -> Fraction:
        return Fraction(2 * self.a + self.n - 3, 2)

    @property
    def beta(self) -> Fraction:
        return Fraction(2 * self.b + self.n - 3, 2)


@functools.lru_cache(maxsize=None)
def _jacobi_exact(params: JacobiParams, k: int) -> Polynomial:
    al, be = params.alpha, params.beta
    if k == 0:
        return Polynomial((Fraction(1),))
    if k == 1:
        return Polynomial(((al - be) / 2, (al + be + 2) / 2))
    c = 2 * k + al + be
    t = Polynomial((Fraction(0), Fraction(1)))
    lhs = 2 * k * (k + al + be) * (c - 2)
    first = (t.scale(c * (c - 2)) + (al * al - be * be)) * _jacobi_exact(params, k - 1)
    p = first.scale(c - 1) - _jacobi_exact(params, k - 2).scale(2 * (k + al - 1) * (k + be - 1) * c)
    return p.scale(1 / lhs)


def jacobi_adjacent(params: JacobiParams, k: int, exact: bool = False) -> Polynomial:
    """Jacobi polynomial P_k^{(alpha, beta)} in the standard normalisation.

    Its value at 1 is binom(k + alpha, k) > 0.
    """
    if k < 0:
        raise OutOfRange(f"degree must be >= 0, got {k}")
    p = _jacobi_exact(params, k)
    return p if exact else p.to_float()


# ---------------------------------------------------------------------------
# Roots and extrema
# ---------------------------------------------------------------------------


def greatest_zero(p: Polynomial, samples: int = ROOT_SCAN_POINTS) -> float:
    """Largest real root in (-1, 1): uniform sign scan from the right, then Brent."""
    q = p.to_float()
    grid = np.linspace(-1.0, 1.0, samples)
    values = q(grid)
    for i in range(samples - 2, -1, -1):
        lo, hi = grid[i], grid[i + 1]
        f_lo, f_hi = values[i], values[i + 1]
        if f_hi == 0.0 and hi < 1.0:
            return float(hi)
        if f_lo * f_hi < 0.0:
            return float(brentq(q, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps))
    raise NoRealRoot(f"no sign change of {p!r} in (-1, 1)")


def real_roots_in(p: Polynomial, lo: float, hi: float, imag_tol: float = 1e-9) -> list[float]:
    """Real roots of ``p`` in [lo, hi] from the companion matrix."""
    q = p.to_float()
    if q.degree < 1:
        return []
    roots = npp.polyroots(np.array(q.coeffs))
    real = [float(r.real) for r in np.atleast_1d(roots) if abs(r.imag) <= imag_tol]
    return sorted(r for r in real if lo <= r <= hi)


def maximize_on(p: Polynomial, lo: float, hi: float, samples: int = 20001) -> tuple[float, float]:
    """(argmax, max) of ``p`` on [lo, hi] over endpoints, critical points and a dense grid."""
    q = p.to_float()
    candidates = np.concatenate([
        np.linspace(lo, hi, samples),
        np.array(real_roots_in(q.derivative(), lo, hi), dtype=float),
    ])
    values = q(candidates)
    i = int(np.argmax(values))
    return float(candidates[i]), float(values[i])
