"""Musin's strengthened LP bound.

For a polynomial f that is nonpositive on [t0, s] (B1), decreasing on
[-1, t0] (B2) and has a nonnegative Gegenbauer expansion with f_0 > 0 (B3),

    A(n, s) <= max(h_0, ..., h_mu) / f_0,

where h_m is the largest value of f(1) + sum_j f(<e_1, y_j>) over m unit
vectors y_j in the cap <e_1, y> <= t0 with pairwise inner products <= s, and
mu bounds how many points of a code can sit in that cap.

h_0, h_1 and (for n = 3, s = 1/2) h_2 have closed forms; higher h_m are
estimated numerically and flag the resulting bound as non-rigorous. When
the cap cannot hold two points at inner product <= s, every h_m with m >= 2
is vacuous and drops out of the maximum.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from kissing.config import DEFAULTS, MusinSettings, Settings
from kissing.errors import (
    ConditionViolated,
    InfeasibleCap,
    InvalidDimension,
    OutOfRange,
    PreconditionViolated,
    UnsupportedConfiguration,
)
from kissing.lp import chebyshev_lobatto
from kissing.polynomials import (
    GegenbauerExpansion,
    Polynomial,
    gegenbauer_derivative_values,
    gegenbauer_expand,
    gegenbauer_values,
    maximize_on,
)
from kissing.report import BoundReport
from kissing.simplex import LpProblem, simplex_solve


logger = logging.getLogger(__name__)

CLOSED_FORM = "closed-form"
HEURISTIC = "heuristic"
VACUOUS = "vacuous"

CHECK_TOL = 1e-9
# H may not fall between cutting-plane rounds by more than this (relative)
REGRESSION_TOL = 1e-7
FEASIBILITY_TOL = 1e-7
H2_SCAN_POINTS = 2001


@dataclass(frozen=True)
class SearchParams:
    restarts: int = 8
    iterations: int = 200
    seed: int = 0


@dataclass(frozen=True)
class MusinConfig:
    n: int
    s: float
    t0: float
    mu: int
    search: SearchParams = field(default_factory=SearchParams)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 3:
            raise InvalidDimension(f"dimension must be an integer >= 3, got {self.n!r}")
        if not -1 <= self.s < 1:
            raise OutOfRange(f"s must lie in [-1, 1), got {self.s}")
        if not -1 <= self.t0 < -self.s:
            raise OutOfRange(f"t0 must satisfy -1 <= t0 < -s, got t0={self.t0}, s={self.s}")
        if self.mu < 0:
            raise OutOfRange(f"mu must be >= 0, got {self.mu}")

    @classmethod
    def from_settings(
        cls,
        n: int,
        s: float,
        settings: MusinSettings = DEFAULTS.musin,
        t0: float | None = None,
        mu: int | None = None,
        restarts: int | None = None,
        iterations: int | None = None,
        seed: int | None = None,
    ) -> "MusinConfig":
        """Fill t0 and mu from the configured presets unless given explicitly."""
        preset = settings.preset_for(n, s)
        if t0 is None or mu is None:
            if preset is None:
                raise UnsupportedConfiguration(f"no Musin preset for n={n}, s={s}; pass t0 and mu")
            t0 = preset.t0 if t0 is None else t0
            mu = preset.mu if mu is None else mu
        search = SearchParams(
            restarts=settings.restarts if restarts is None else restarts,
            iterations=settings.iterations if iterations is None else iterations,
            seed=settings.seed if seed is None else seed,
        )
        return cls(n=n, s=float(s), t0=float(t0), mu=int(mu), search=search)


@dataclass(frozen=True)
class HmEstimate:
    m: int
    value: float
    provenance: str
    cap_inner_products: tuple[float, ...] = ()


# ---------------------------------------------------------------------------
# Preconditions
# ---------------------------------------------------------------------------


def _scale(f: Polynomial) -> float:
    return max(abs(float(c)) for c in f.coeffs)


def check_b1(config: MusinConfig, f: Polynomial, tol: float = CHECK_TOL) -> None:
    witness, value = maximize_on(f, config.t0, config.s)
    if value > tol * _scale(f):
        raise ConditionViolated("B1", witness, value, f"f({witness:.6g}) = {value:.3g} > 0 on [t0, s]")


def check_b2(
    config: MusinConfig,
    f: Polynomial,
    samples: int = DEFAULTS.musin.derivative_samples,
    tol: float = CHECK_TOL,
) -> None:
    grid = np.linspace(-1.0, config.t0, samples)
    slopes = f.to_float().derivative()(grid)
    i = int(np.argmax(slopes))
    if slopes[i] > tol * _scale(f):
        raise ConditionViolated("B2", float(grid[i]), float(slopes[i]), "f is not decreasing on [-1, t0]")


def check_b3(config: MusinConfig, f: Polynomial, tol: float = CHECK_TOL) -> GegenbauerExpansion:
    expansion = gegenbauer_expand(config.n, f.to_float())
    scale = max(abs(c) for c in expansion.coeffs)
    if expansion.f0 <= tol * scale:
        raise ConditionViolated("B3", 0, expansion.f0, "f_0 must be positive")
    for k, fk in enumerate(expansion.coeffs[1:], start=1):
        if fk < -tol * scale:
            raise ConditionViolated("B3", k, fk, f"f_{k} = {fk:.3g} < 0")
    return expansion


# ---------------------------------------------------------------------------
# h_m
# ---------------------------------------------------------------------------


def h2_closed_form(n: int, s: float, f: Polynomial, t0: float | None = None) -> float:
    """h_2 on S^2 at s = 1/2: max of f(1) + f(-cos phi) + f(-cos(pi/3 - phi)).

    The two cap points lie in one plane with -e_1, at angles phi and
    pi/3 - phi from it. With ``t0`` both must stay within angle
    arccos(-t0) of -e_1.
    """
    if n != 3 or abs(float(s) - 0.5) > 1e-12:
        raise UnsupportedConfiguration(f"closed-form h_2 needs n=3, s=1/2, got n={n}, s={s}")
    q = f.to_float()
    lo, hi = 0.0, math.pi / 3
    if t0 is not None:
        theta = math.acos(-t0)
        lo, hi = max(lo, math.pi / 3 - theta), min(hi, theta)
        if lo > hi:
            raise InfeasibleCap(f"cap with t0={t0} cannot hold two points at angle pi/3")

    def objective(phi):
        return float(q(1.0) + q(-math.cos(phi)) + q(-math.cos(math.pi / 3 - phi)))

    phis = np.linspace(lo, hi, H2_SCAN_POINTS)
    values = [objective(phi) for phi in phis]
    i = int(np.argmax(values))
    best = values[i]
    if hi > lo:
        step = (hi - lo) / (H2_SCAN_POINTS - 1)
        a, b = max(lo, phis[i] - step), min(hi, phis[i] + step)
        refined = minimize_scalar(
            lambda phi: -objective(phi), bounds=(a, b), method="bounded", options={"xatol": 1e-10}
        )
        best = max(best, -float(refined.fun))
    return best


def _random_cap_points(rng: np.random.Generator, m: int, n: int, t0: float) -> np.ndarray:
    heights = rng.uniform(-1.0, t0, size=m)
    directions = rng.normal(size=(m, n - 1))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radius = np.sqrt(np.maximum(1.0 - heights**2, 0.0))
    return np.column_stack([heights, directions * radius[:, None]])


def h_m_estimate(config: MusinConfig, f: Polynomial, m: int) -> HmEstimate:
    """Numerical estimate (from below) of h_m via multistart SLSQP.

    Restart seeds are spawned from ``config.search.seed``, so identical
    parameters give identical output.
    """
    if m < 0 or m > config.mu:
        raise PreconditionViolated(f"m must lie in 0..mu={config.mu}, got {m}")
    q = f.to_float()
    dq = q.derivative()
    f1 = float(q(1.0))
    if m == 0:
        return HmEstimate(0, f1, CLOSED_FORM)
    if m == 1:
        return HmEstimate(1, f1 + float(q(-1.0)), CLOSED_FORM, (-1.0,))

    n, s, t0 = config.n, config.s, config.t0
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]

    def unpack(x):
        return x.reshape(m, n)

    def objective(x):
        y = unpack(x)
        return -(f1 + float(np.sum(q(y[:, 0]))))

    def gradient(x):
        y = unpack(x)
        g = np.zeros_like(y)
        g[:, 0] = -dq(y[:, 0])
        return g.ravel()

    def norms(x):
        y = unpack(x)
        return np.sum(y * y, axis=1) - 1.0

    def caps(x):
        return t0 - unpack(x)[:, 0]

    def separations(x):
        y = unpack(x)
        return np.array([s - y[i] @ y[j] for i, j in pairs])

    constraints = [
        {"type": "eq", "fun": norms},
        {"type": "ineq", "fun": caps},
        {"type": "ineq", "fun": separations},
    ]

    best: tuple[float, np.ndarray] | None = None
    for child in np.random.SeedSequence(config.search.seed).spawn(config.search.restarts):
        rng = np.random.default_rng(child)
        start = _random_cap_points(rng, m, n, t0).ravel()
        result = minimize(
            objective,
            start,
            jac=gradient,
            constraints=constraints,
            method="SLSQP",
            options={"maxiter": config.search.iterations, "ftol": 1e-12},
        )
        x = result.x
        feasible = (
            np.all(np.abs(norms(x)) <= FEASIBILITY_TOL)
            and np.all(caps(x) >= -FEASIBILITY_TOL)
            and np.all(separations(x) >= -FEASIBILITY_TOL)
        )
        if not feasible:
            continue
        value = -float(result.fun)
        if best is None or value > best[0]:
            best = (value, unpack(x).copy())

    if best is None:
        raise InfeasibleCap(f"no feasible configuration of {m} points in the cap t0={t0} at s={s}")
    value, points = best
    logger.debug("h_%d estimate %.10g over %d restarts", m, value, config.search.restarts)
    return HmEstimate(m, value, HEURISTIC, tuple(float(x) for x in points[:, 0]))


def pairs_fit(s: float, t0: float) -> bool:
    """Whether the cap <e_1, y> <= t0 holds two unit vectors with inner product <= s."""
    return t0 >= 0.0 or 2.0 * t0 * t0 - 1.0 <= s


def h_values(config: MusinConfig, f: Polynomial) -> list[HmEstimate]:
    """h_0..h_mu; an h_m with no admissible configuration has value -inf."""
    estimates = []
    for m in range(config.mu + 1):
        if m >= 2 and not pairs_fit(config.s, config.t0):
            estimates.append(HmEstimate(m, -math.inf, VACUOUS))
            continue
        try:
            if m == 2 and config.n == 3 and abs(config.s - 0.5) < 1e-12:
                estimates.append(HmEstimate(2, h2_closed_form(config.n, config.s, f, config.t0), CLOSED_FORM))
            else:
                estimates.append(h_m_estimate(config, f, m))
        except InfeasibleCap as exc:
            logger.info("Skipping h_%d..h_%d: %s", m, config.mu, exc)
            estimates.extend(HmEstimate(k, -math.inf, HEURISTIC) for k in range(m, config.mu + 1))
            break
    return estimates


def _h_notes(config: MusinConfig, estimates: list[HmEstimate]) -> list[str]:
    notes = []
    vacuous = [h.m for h in estimates if h.provenance == VACUOUS]
    if vacuous:
        notes.append(
            f"the cap t0={config.t0} cannot hold two points at inner product <= {config.s}; "
            f"h_m for m={vacuous[0]}..{vacuous[-1]} is vacuous"
        )
    skipped = [h.m for h in estimates if h.provenance == HEURISTIC and not math.isfinite(h.value)]
    if skipped:
        notes.append(f"no feasible cap configuration found for m={skipped[0]}..{skipped[-1]}; skipped")
    if any(h.provenance == HEURISTIC for h in estimates):
        notes.append("h_m for m >= 2 estimated numerically; the bound is not certified")
    return notes


def musin_bound(config: MusinConfig, f: Polynomial, settings: Settings = DEFAULTS) -> BoundReport:
    """max(h_0..h_mu) / f_0 after checking B1, B2 and B3."""
    check_b1(config, f)
    check_b2(config, f, settings.musin.derivative_samples)
    expansion = check_b3(config, f)
    estimates = h_values(config, f)
    # h_0 = f(1) is always finite
    top = max((h for h in estimates if math.isfinite(h.value)), key=lambda h: h.value)
    value = top.value / expansion.f0
    rigorous = all(h.provenance in (CLOSED_FORM, VACUOUS) for h in estimates)
    notes = tuple(_h_notes(config, estimates))
    return BoundReport(
        n=config.n,
        s=config.s,
        method="musin",
        value=value,
        rigorous=rigorous,
        certificate={
            "t0": config.t0,
            "mu": config.mu,
            "f0": expansion.f0,
            "monomial_coeffs": [float(c) for c in f.to_float().coeffs],
            "gegenbauer_coeffs": list(expansion.coeffs),
            "h": [
                {"m": h.m, "value": h.value if math.isfinite(h.value) else None, "provenance": h.provenance}
                for h in estimates
            ],
            "seed": config.search.seed,
            "restarts": config.search.restarts,
        },
        notes=notes,
    )


# ---------------------------------------------------------------------------
# Polynomial search
# ---------------------------------------------------------------------------


def _search_estimates(config: MusinConfig, f: Polynomial) -> list[HmEstimate]:
    """h_2..h_mu estimates with cap configurations; stops at the first infeasible m."""
    if not pairs_fit(config.s, config.t0):
        return []
    estimates = []
    for m in range(2, config.mu + 1):
        try:
            estimates.append(h_m_estimate(config, f, m))
        except InfeasibleCap:
            break
    return estimates


def _cut_row(n: int, degree: int, inner_products) -> tuple[np.ndarray, float]:
    """Row for f(1) + sum_j f(x_j) <= H in the variables (f_1..f_d, H)."""
    x = np.asarray(inner_products, dtype=float)
    row = np.ones(degree + 1)
    if x.size:
        row[:degree] += gegenbauer_values(n, degree, x)[1:].sum(axis=1)
    row[degree] = -1.0
    return row, -(1.0 + x.size)


def musin_search(
    config: MusinConfig,
    degree: int | None = None,
    grid_size: int | None = None,
    max_rounds: int | None = None,
    settings: Settings = DEFAULTS,
) -> tuple[Polynomial, BoundReport]:
    """Cutting-plane LP for a polynomial with a small Musin bound.

    Minimises H over f_0 = 1, f_k >= 0 with f <= 0 on a grid of [t0, s],
    f' <= 0 on a grid of [-1, t0], and H >= f(1) + sum_j f(x_j) for every
    cap configuration found so far. Each round adds the configurations that
    the h_m search finds above H and the sample points where B1 or B2 fail.
    """
    n, s, t0 = config.n, config.s, config.t0
    preset = settings.musin.preset_for(n, s)
    degree = degree or (preset.degree if preset else 9)
    grid_size = grid_size or settings.musin.grid_size
    max_rounds = max_rounds or settings.musin.max_rounds
    samples = settings.musin.derivative_samples

    b1_points = list(chebyshev_lobatto(t0, s, max(grid_size // 2, 10 * degree)))
    b2_points = list(np.linspace(-1.0, t0, max(grid_size // 4, 2 * degree)))
    # every variable, H included, is >= 0 (H >= h_0 >= 1)
    cuts: list[tuple[float, ...]] = [(), (-1.0,)]

    best: tuple[float, Polynomial] | None = None
    f = None
    previous_H = None
    converged = False
    notes: list[str] = []
    for round_no in range(1, max_rounds + 1):
        b1 = gegenbauer_values(n, degree, np.array(b1_points))[1:].T
        b2 = gegenbauer_derivative_values(n, degree, np.array(b2_points))[1:].T
        rows = [np.hstack([b1, np.zeros((len(b1_points), 1))]), np.hstack([b2, np.zeros((len(b2_points), 1))])]
        rhs = [-np.ones(len(b1_points)), np.zeros(len(b2_points))]
        for cut in cuts:
            row, b = _cut_row(n, degree, cut)
            rows.append(row[None, :])
            rhs.append(np.array([b]))
        objective = np.zeros(degree + 1)
        objective[degree] = 1.0
        problem = LpProblem(objective=objective, a_ub=np.vstack(rows), b_ub=np.concatenate(rhs))
        result = simplex_solve(problem, settings.lp.max_iterations, settings.lp.pivot_tolerance).raise_for_status()
        H = float(result.x[degree])
        # H is nondecreasing across rounds
        if previous_H is not None and H < previous_H - REGRESSION_TOL * max(1.0, abs(previous_H)):
            logger.warning(
                "Musin search round %d: H fell from %.10g to %.10g; keeping earlier rounds", round_no, previous_H, H
            )
            notes.append(f"round {round_no} LP optimum fell below the previous round and was discarded")
            break
        previous_H = H
        coeffs = np.maximum(result.x[:degree], 0.0)
        f = GegenbauerExpansion(n, (1.0, *(float(c) for c in coeffs))).reconstruct()

        added = 0
        estimates = _search_estimates(config, f)
        for estimate in estimates:
            if estimate.value > H + 1e-9 * max(1.0, abs(H)):
                cuts.append(estimate.cap_inner_products)
                added += 1
        verified = True
        witness, excess = maximize_on(f, t0, s)
        if excess > CHECK_TOL * _scale(f):
            b1_points.append(witness)
            added += 1
            verified = False
        grid = np.linspace(-1.0, t0, samples)
        slopes = f.derivative()(grid)
        if slopes.max() > CHECK_TOL * _scale(f):
            b2_points.append(float(grid[int(np.argmax(slopes))]))
            added += 1
            verified = False
        if verified:
            f1 = float(f(1.0))
            value = max([f1, f1 + float(f(-1.0)), *(h.value for h in estimates)])
            if best is None or value < best[0]:
                best = (value, f)
        logger.info("Musin search round %d: H = %.10g, %d new constraints", round_no, H, added)
        if not added:
            converged = True
            break
    else:
        logger.warning("Musin search stopped after %d rounds without converging", max_rounds)
        notes.append(f"search stopped after {max_rounds} rounds without converging")

    if best is not None:
        f = best[1]
    _, excess = maximize_on(f, t0, s)
    if excess > 0.0:
        f = f - (excess * (1.0 + 1e-9) + 1e-15)
    report = musin_bound(config, f, settings)
    certificate = dict(report.certificate)
    certificate.update({"degree": degree, "rounds": round_no, "cuts": len(cuts), "converged": converged})
    return f, BoundReport(
        n=report.n,
        s=report.s,
        method="musin",
        value=report.value,
        rigorous=report.rigorous and converged,
        certificate=certificate,
        notes=(*report.notes, *notes),
    )
