"""Fejes Toth and Coxeter-Boroczky bounds.

The Coxeter-Boroczky bound needs Schlafli's function F_n, defined by

    F_{n+1}(a) = 2/pi * int_{arccos(1/n)/2}^{a} F_{n-1}(beta(t)) dt,
    beta(t)    = arccos(cos 2t / (1 - 2 cos 2t)) / 2,

with F_0 = F_1 = 1. Levels 0 to 3 have constant or linear integrands; deeper
inner levels are tabulated once per context and interpolated with a cubic
spline.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from kissing.config import DEFAULTS, GeometricSettings
from kissing.errors import DomainError, InvalidDimension, OutOfRange, PreconditionViolated
from kissing.report import BoundReport


logger = logging.getLogger(__name__)

SPLINE_UPPER = 1.0
ERROR_PROBE_STRIDE = 16
CLAMP_SLACK = 1e-12


# ---------------------------------------------------------------------------
# Fejes Toth
# ---------------------------------------------------------------------------


def fejes_toth_bound(M: int) -> float | None:
    """Upper bound d_FT on the minimum distance of M points on S^2.

    Returns None when the radicand is negative (no constraint).
    """
    if M < 3:
        raise PreconditionViolated(f"M must be >= 3, got {M}")
    phi = math.pi * M / (6 * (M - 2))
    radicand = 4.0 - 1.0 / math.sin(phi) ** 2
    if radicand < 0.0:
        return None
    return math.sqrt(radicand)


def fejes_toth_cardinality_bound(s: float) -> BoundReport:
    """A(3, s) <= largest M whose Fejes Toth distance still admits sqrt(2 - 2s)."""
    if not -1 <= s < 1:
        raise OutOfRange(f"s must lie in [-1, 1), got {s}")
    target = math.sqrt(2.0 - 2.0 * float(s))
    best = 2
    M = 3
    while True:
        d = fejes_toth_bound(M)
        if d is None or d < target - 1e-12:
            break
        best = M
        M += 1
    return BoundReport(
        n=3,
        s=s,
        method="fejes-toth",
        value=best,
        rigorous=True,
        certificate={"min_distance": target, "d_ft_at_bound": fejes_toth_bound(max(best, 3))},
    )


# ---------------------------------------------------------------------------
# Schlafli function
# ---------------------------------------------------------------------------


def _adaptive_simpson(f, a: float, b: float, tol: float, max_depth: int) -> tuple[float, float, bool]:
    """(integral, error estimate, depth cap hit) by recursive adaptive Simpson."""
    if b == a:
        return 0.0, 0.0, False

    def simpson(fa, fm, fb, h):
        return h / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, depth, tol):
        m = (a + b) / 2.0
        lm, rm = (a + m) / 2.0, (m + b) / 2.0
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, m - a)
        right = simpson(fm, frm, fb, b - m)
        delta = (left + right - whole) / 15.0
        if abs(delta) < tol:
            return left + right + delta, abs(delta), False
        if depth >= max_depth:
            return left + right + delta, abs(delta), True
        lv, le, lc = recurse(a, m, fa, flm, fm, left, depth + 1, tol / 2.0)
        rv, rerr, rc = recurse(m, b, fm, frm, fb, right, depth + 1, tol / 2.0)
        return lv + rv, le + rerr, lc or rc

    fa, fm, fb = f(a), f((a + b) / 2.0), f(b)
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), 0, tol)


def lower_limit(n: int) -> float:
    """Lower integration limit of F_n, i.e. arccos(1/(n-1)) / 2."""
    return 0.5 * math.acos(1.0 / (n - 1))


@dataclass(frozen=True)
class SchlafliEval:
    n: int
    alpha: float
    value: float
    tol: float
    error: float = 0.0
    clamped: bool = False
    depth_capped: bool = False


@dataclass
class SchlafliContext:
    """Memoisation scope for one family of F_n evaluations."""

    settings: GeometricSettings = field(default_factory=GeometricSettings)
    tol: float | None = None
    clamped: bool = False
    depth_capped: bool = False
    _splines: dict = field(default_factory=dict, init=False, repr=False)
    _spline_error: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.tol is None:
            self.tol = self.settings.tol

    def beta(self, t: float) -> float:
        c = math.cos(2.0 * t)
        denom = 1.0 - 2.0 * c
        if denom <= 0.0:
            self.clamped = True
            return 0.0
        ratio = c / denom
        if not -1.0 <= ratio <= 1.0:
            # |ratio| overshoots 1 by rounding at the lower limit itself
            if abs(ratio) > 1.0 + CLAMP_SLACK:
                self.clamped = True
            ratio = min(1.0, max(-1.0, ratio))
        return 0.5 * math.acos(ratio)

    def _integrand(self, n: int):
        """Integrand of F_n in u, where t = lower_limit(n) + u**2."""
        lo = lower_limit(n)
        inner = n - 2
        if inner <= 1:
            return lambda u: 2.0 * u
        return lambda u: 2.0 * u * self._inner(inner, self.beta(lo + u * u))

    def _inner(self, m: int, alpha: float) -> float:
        if m <= 3:
            return self._direct(m, alpha, self.tol)[0]
        if alpha > SPLINE_UPPER:
            raise DomainError(f"inner angle {alpha:.6g} outside the tabulated range of F_{m}")
        u = math.sqrt(max(alpha - lower_limit(m), 0.0))
        return float(self._spline(m)(u))

    def _direct(self, n: int, alpha: float, tol: float) -> tuple[float, float]:
        if n <= 1:
            return 1.0, 0.0
        lo = lower_limit(n)
        if alpha < lo:
            # Below the lower limit F_n vanishes; inner levels reach here only by rounding.
            return 0.0, 0.0
        value, error, capped = _adaptive_simpson(
            self._integrand(n), 0.0, math.sqrt(alpha - lo), tol * math.pi / 2.0, self.settings.max_depth
        )
        self.depth_capped |= capped
        error = 2.0 / math.pi * error
        if n - 2 >= 4:
            error += 2.0 / math.pi * (alpha - lo) * self._spline_error.get(n - 2, 0.0)
        return 2.0 / math.pi * value, error

    def _spline(self, m: int) -> CubicSpline:
        spline = self._splines.get(m)
        if spline is not None:
            return spline
        lo = lower_limit(m)
        nodes = self.settings.grid_nodes
        u = np.linspace(0.0, math.sqrt(SPLINE_UPPER - lo), nodes)
        integrand = self._integrand(m)
        piece_tol = self.tol * math.pi / 2.0 / nodes
        values = np.zeros(nodes)
        for i in range(nodes - 1):
            piece, _, capped = _adaptive_simpson(integrand, u[i], u[i + 1], piece_tol, self.settings.max_depth)
            self.depth_capped |= capped
            values[i + 1] = values[i] + 2.0 / math.pi * piece
        # tabulated in u = sqrt(alpha - lo), where F_m is smooth
        spline = CubicSpline(u, values)
        worst = 0.0
        for i in range(0, nodes - 1, ERROR_PROBE_STRIDE):
            mid = 0.5 * (u[i] + u[i + 1])
            piece, _, _ = _adaptive_simpson(integrand, u[i], mid, piece_tol, self.settings.max_depth)
            worst = max(worst, abs(values[i] + 2.0 / math.pi * piece - float(spline(mid))))
        self._splines[m] = spline
        self._spline_error[m] = worst
        logger.info("Tabulated F_%d on %d nodes, interpolation error ~%.2g", m, nodes, worst)
        return spline

    def evaluate(self, n: int, alpha: float) -> SchlafliEval:
        if not isinstance(n, int) or n < 0:
            raise PreconditionViolated(f"Schlafli depth must be an integer >= 0, got {n!r}")
        if n >= 2:
            lo = lower_limit(n)
            if alpha < lo - 1e-15:
                raise DomainError(f"F_{n} is defined for alpha >= {lo:.12g}, got {alpha}")
            if alpha > math.pi / 2:
                raise DomainError(f"alpha must not exceed pi/2, got {alpha}")
            alpha = max(alpha, lo)
        value, error = self._direct(n, alpha, self.tol)
        return SchlafliEval(
            n=n,
            alpha=alpha,
            value=value,
            tol=self.tol,
            error=error,
            clamped=self.clamped,
            depth_capped=self.depth_capped,
        )


def schlafli_F(n: int, alpha: float, tol: float = DEFAULTS.geometric.tol) -> float:
    return SchlafliContext(tol=tol).evaluate(n, alpha).value


# ---------------------------------------------------------------------------
# Coxeter-Boroczky
# ---------------------------------------------------------------------------


def coxeter_boroczky_bound(
    n: int,
    s: float,
    tol: float | None = None,
    settings: GeometricSettings = DEFAULTS.geometric,
) -> BoundReport:
    """A_CB(n, s) = 2 F_{n-1}(alpha) / F_n(alpha), alpha = arccos(s / (1 + (n-2)s)) / 2."""
    if not isinstance(n, int) or n < 3:
        raise InvalidDimension(f"dimension must be an integer >= 3, got {n!r}")
    if not 0 < s < 1:
        raise OutOfRange(f"Coxeter-Boroczky needs s in (0, 1), got {s}")
    s = float(s)
    alpha = 0.5 * math.acos(s / (1.0 + (n - 2) * s))
    context = SchlafliContext(settings=settings, tol=tol)
    upper_level = context.evaluate(n - 1, alpha)
    lower_level = context.evaluate(n, alpha)
    if lower_level.value <= 0.0:
        raise DomainError(f"F_{n}({alpha:.6g}) is not positive")
    value = 2.0 * upper_level.value / lower_level.value
    error = value * (upper_level.error / upper_level.value + lower_level.error / lower_level.value)
    rigorous = not (context.clamped or context.depth_capped)
    notes = ()
    if not rigorous:
        notes = ("quadrature clamped beta or hit the depth cap",)
    logger.debug("A_CB(%d, %g) = %.10g +- %.2g", n, s, value, error)
    return BoundReport(
        n=n,
        s=s,
        method="coxeter-boroczky",
        value=value,
        rigorous=rigorous,
        certificate={
            "alpha": alpha,
            "F_n_minus_1": upper_level.value,
            "F_n": lower_level.value,
            "error": error,
            "tol": context.tol,
        },
        notes=notes,
    )
