"""Levenshtein's universal upper bound on A(n, s).

The interval [-1, 1) is split at the greatest zeros t_k^{1,0} and t_k^{1,1}
of the adjacent polynomials. On the m-th piece the bound is a closed form in
Gegenbauer values at s, and it is attained by an explicit polynomial built
from the adjacent kernel.
"""

import functools
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from scipy.special import roots_jacobi

from kissing.config import DEFAULTS
from kissing.errors import InvalidDimension, KernelConstructionFailure, OutOfRange
from kissing.lp import verify_theorem1
from kissing.polynomials import (
    JacobiParams,
    Polynomial,
    gegenbauer,
    gegenbauer_expand,
    gegenbauer_values,
    greatest_zero,
    jacobi_adjacent,
)
from kissing.report import BoundReport


logger = logging.getLogger(__name__)

# above this degree the zeros come from Gauss-Jacobi nodes instead of a sign scan
JACOBI_SCAN_DEGREE = 10


def _check(n, s) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 3:
        raise InvalidDimension(f"dimension must be an integer >= 3, got {n!r}")
    if not -1 <= s < 1:
        raise OutOfRange(f"s must lie in [-1, 1), got {s}")


@functools.lru_cache(maxsize=None)
def adjacent_zero(n: int, a: int, b: int, k: int) -> float:
    """t_k^{a,b}: greatest zero of the degree-k adjacent polynomial; t_0 := -1."""
    if k == 0:
        return -1.0
    if k > JACOBI_SCAN_DEGREE:
        params = JacobiParams(n, a, b)
        return float(roots_jacobi(k, float(params.alpha), float(params.beta))[0].max())
    return greatest_zero(jacobi_adjacent(JacobiParams(n, a, b), k))


@dataclass(frozen=True)
class IntervalIndex:
    m: int
    lo: float
    hi: float

    @property
    def k(self) -> int:
        """Kernel size: the bound polynomial uses adjacent degrees below k."""
        return (self.m + 1) // 2 if self.m % 2 else self.m // 2


def interval_bracket(n: int, m: int) -> tuple[float, float]:
    if m == 0:
        return -1.0, adjacent_zero(n, 1, 0, 1)
    if m % 2:
        k = (m + 1) // 2
        return adjacent_zero(n, 1, 1, k - 1), adjacent_zero(n, 1, 0, k)
    k = m // 2
    return adjacent_zero(n, 1, 0, k), adjacent_zero(n, 1, 1, k)


def interval_index(n: int, s, tie_tol: float = DEFAULTS.tolerances.tie) -> IntervalIndex:
    """Locate s among the Levenshtein intervals; boundary ties go to the smaller m."""
    _check(n, s)
    x = float(s)
    _, first = interval_bracket(n, 0)
    if x < first - tie_tol:
        return IntervalIndex(0, -1.0, first)
    # the zeros increase to 1, so every s < 1 is reached
    for m in itertools.count(1):
        lo, hi = interval_bracket(n, m)
        if x <= hi + tie_tol:
            return IntervalIndex(m, lo, hi)


def interval_table(n: int, m_max: int) -> list[IntervalIndex]:
    if not isinstance(n, int) or n < 3:
        raise InvalidDimension(f"dimension must be an integer >= 3, got {n!r}")
    return [IntervalIndex(m, *interval_bracket(n, m)) for m in range(m_max + 1)]


def _effective_m(m: int) -> int:
    # The even closed form degenerates to 0 at m = 0; s < t_1^{1,0} uses L_1.
    return max(m, 1)


def levenshtein_value(n: int, s, m: int):
    """Closed form L_m(n, s); exact when s is rational and exact."""
    m = _effective_m(m)
    exact = isinstance(s, Rational)
    one = Fraction(1) if exact else 1.0
    if not exact:
        table = gegenbauer_values(n, m // 2 + 1, [s])[:, 0]

    def P(k):
        return gegenbauer(n, k, exact=True)(s) if exact else float(table[k])

    if m % 2:
        k = (m + 1) // 2
        head = one * (2 * k + n - 3) / (n - 1)
        tail = (P(k - 1) - P(k)) / ((1 - s) * P(k))
        return math.comb(k + n - 3, k - 1) * (head - tail)
    k = m // 2
    head = one * (2 * k + n - 1) / (n - 1)
    tail = (1 + s) * (P(k) - P(k + 1)) / ((1 - s) * (P(k) + P(k + 1)))
    return math.comb(k + n - 2, k) * (head - tail)


def _inverse_norms(params: JacobiParams, degree: int, exact: bool) -> list:
    """1/h_i for i <= degree, relative to h_0, from the ratio h_i / h_{i-1}."""
    al, be = params.alpha, params.beta
    r = [Fraction(1)]
    for i in range(1, degree + 1):
        ratio = (2 * i + al + be - 1) / (2 * i + al + be + 1) * (i + al) * (i + be) / ((i + al + be) * i)
        r.append(r[-1] / ratio)
    return r if exact else [float(x) for x in r]


def adjacent_kernel(n: int, a: int, b: int, degree: int, s) -> Polynomial:
    """T_degree^{a,b}(t, s) = sum_{i <= degree} r_i Q_i(t) Q_i(s), as a polynomial in t."""
    exact = isinstance(s, Rational)
    params = JacobiParams(n, a, b)
    r = _inverse_norms(params, degree, exact)
    total = Polynomial.constant(Fraction(0) if exact else 0.0)
    for i in range(degree + 1):
        q = jacobi_adjacent(params, i, exact=exact)
        total = total + q.scale(r[i] * q(s))
    return total


def christoffel_darboux_kernel(n: int, a: int, b: int, degree: int, s) -> Polynomial:
    """(Q_{d+1}(t) Q_d(s) - Q_d(t) Q_{d+1}(s)) / (t - s); proportional to the adjacent kernel."""
    exact = isinstance(s, Rational)
    params = JacobiParams(n, a, b)
    q_hi = jacobi_adjacent(params, degree + 1, exact=exact)
    q_lo = jacobi_adjacent(params, degree, exact=exact)
    numerator = q_hi.scale(q_lo(s)) - q_lo.scale(q_hi(s))
    one = Fraction(1) if exact else 1.0
    quotient, _ = numerator.divmod(Polynomial((-s * one, one)))
    return quotient


def levenshtein_polynomial(
    n: int,
    s,
    tie_tol: float = DEFAULTS.tolerances.tie,
    check_tol: float = DEFAULTS.tolerances.kernel_check,
) -> Polynomial:
    """Monic polynomial attaining L_m(n, s) in the LP bound."""
    index = interval_index(n, s, tie_tol)
    m = _effective_m(index.m)
    exact = isinstance(s, Rational)
    one = Fraction(1) if exact else 1.0
    t = Polynomial((0 * one, one))
    if m % 2:
        kernel = adjacent_kernel(n, 1, 0, (m + 1) // 2 - 1, s)
        f = (t - s) * kernel * kernel
    else:
        kernel = adjacent_kernel(n, 1, 1, m // 2 - 1, s)
        f = (t + 1) * (t - s) * kernel * kernel
    f = f.scale(1 / f.leading)

    expansion = gegenbauer_expand(n, f)
    expected = levenshtein_value(n, s, m)
    if expansion.f0 == 0:
        raise KernelConstructionFailure(f"kernel polynomial has f_0 = 0 at n={n}, s={s}")
    got = f(1) / expansion.f0
    if abs(float(got) - float(expected)) > check_tol * max(1.0, abs(float(expected))):
        raise KernelConstructionFailure(
            f"kernel bound {float(got):.12g} disagrees with closed form {float(expected):.12g}"
        )
    return f


def levenshtein_bound(
    n: int,
    s,
    certify: bool = True,
    tie_tol: float = DEFAULTS.tolerances.tie,
    condition_tol: float = DEFAULTS.tolerances.condition,
    check_points: int = DEFAULTS.lp.check_points,
) -> BoundReport:
    """L(n, s) with the interval index and, when ``certify``, a checked Delsarte certificate."""
    index = interval_index(n, s, tie_tol)
    value = levenshtein_value(n, s, index.m)
    certificate = {"m": index.m, "interval": [index.lo, index.hi]}
    rigorous = isinstance(s, Rational)
    notes = ()
    if certify:
        f = levenshtein_polynomial(n, s, tie_tol)
        checked = verify_theorem1(n, s, f, condition_tol, check_points)
        certificate.update(checked.certificate)
        rigorous = checked.rigorous
        notes = checked.notes
    logger.debug("L(%d, %s) = %s on interval m=%d", n, s, value, index.m)
    return BoundReport(
        n=n,
        s=s,
        method="levenshtein",
        value=value,
        rigorous=rigorous,
        certificate=certificate,
        notes=notes,
    )

