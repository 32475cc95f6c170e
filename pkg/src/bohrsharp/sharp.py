"""Sharp constants Lambda(R) and the tools used to compute and cross-check them.

The specialised routes minimise the closed-form ratio ``M(a, R)`` over
``a in [0, 1]`` (coarse scan, then golden section).  Independent routes are
kept next to them: the critical polynomial ``p_r`` whose roots are the
stationary points of ``M(., r)``, the generic infimum of
``Upsilon(phi_a, r) / phi(phi_a, r)`` over the Moebius rectangle, and the
closed-form lower/upper envelopes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BoundaryMinimum, DomainError, NonPositiveWeight, UndefinedAtZeroRadius
from .functionals import (
    THIRD,
    WeightFunction,
    j_factor,
    phi0_mobius,
    radius,
    upsilon_mobius,
)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

COARSE_POINTS = 4096
GOLDEN_WIDTH = 1e-12
REPORTED_TOL = 1e-9
GENERIC_GRID = 512
SIGN_SCAN_CELLS = 10_000
BISECT_WIDTH = 1e-13
CORNER_GUARD = 2.0**-20

CLOSED_FORM_MIN = "closed_form_min"
GRID_REFINE = "grid_refine"
BOUNDARY_LIMIT = "boundary_limit"

MobiusEvaluator = Callable  # (a, r) -> phi(phi_a, r), numpy-vectorised


@dataclass(frozen=True)
class SharpResult:
    lam: float
    argmin_a: float
    argmin_r: float
    method: str
    tol: float

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"sharp constant must be nonnegative, got {self.lam}")


@dataclass(frozen=True)
class BoundPair:
    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")


def _is_critical_radius(r: float) -> bool:
    return abs(r - THIRD) <= 1e-15


def _positive_radius(R: float) -> float:
    R = radius(R)
    if R == 0.0:
        raise UndefinedAtZeroRadius("Lambda(R) has a 1/R^2 factor and no finite value at R = 0")
    return R


def golden_section(f: Callable[[float], float], lo: float, hi: float, width: float = GOLDEN_WIDTH):
    """Minimise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > width:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    candidates = [(fc, c), (fd, d), (f(lo), lo), (f(hi), hi)]
    fx, x = min(candidates, key=lambda t: (t[0], t[1]))
    return x, fx


def _parabolic_polish(func, x: float, fx: float, lo: float, hi: float, h: float = 1e-5):
    """Vertex of the parabola through ``x - h, x, x + h``.

    Golden section stalls at ~sqrt(machine eps) in the argument because
    function values are flat there; a wide central stencil does not.
    """
    if x - h <= lo or x + h >= hi:
        return x, fx
    fm, f0, fp = float(func(x - h)), float(func(x)), float(func(x + h))
    curv = fp - 2.0 * f0 + fm
    if not curv > 0.0:
        return x, fx
    step = 0.5 * h * (fp - fm) / curv
    if abs(step) > h:
        return x, fx
    xp = x - step
    return xp, min(float(func(xp)), fx)


# -- the phi_0 ratio ---------------------------------------------------------


def m_ratio(a, r: float):
    """``M(a, r) = Upsilon(phi_a, r) / phi_0(phi_a, r)``.

    At ``r = 1/3`` the vanishing factors cancel exactly and the reduced form
    ``(16/9)(9 - a^4) / ((1 + a)^2 (3 - a))`` is used for every ``a``.  For
    ``r < 1/3`` the ratio blows up at ``a = 1``.
    """
    r = radius(r)
    if r == 0.0:
        raise UndefinedAtZeroRadius("M(a, r) has a 1/r^2 factor")
    a = np.asarray(a, dtype=float)
    if _is_critical_radius(r):
        out = (16.0 / 9.0) * (9.0 - a**4) / ((1.0 + a) ** 2 * (3.0 - a))
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = ((1.0 - r * r) / (r * r) * (1.0 - a**4 * r * r) / ((1.0 - a) * (1.0 + a) ** 2)
                   * (1.0 - r * (1.0 + 2.0 * a)) / (1.0 - a * r))
        out = np.where(a >= 1.0, np.inf, out)
    return float(out) if out.ndim == 0 else out


def _minimize_unit_interval(func, R: float) -> SharpResult:
    """Coarse scan of ``[0, 1]`` then golden refinement around the best cell."""
    grid = np.linspace(0.0, 1.0, COARSE_POINTS)
    values = func(grid)
    i = int(np.argmin(values))
    if i == grid.size - 1:
        return SharpResult(float(values[i]), 1.0, R, BOUNDARY_LIMIT, REPORTED_TOL)
    lo, hi = grid[max(i - 1, 0)], grid[i + 1]
    x, fx = golden_section(lambda t: float(func(t)), lo, hi)
    if fx > values[i]:
        x, fx = grid[i], float(values[i])
    x, fx = _parabolic_polish(func, x, fx, lo, hi)
    return SharpResult(float(fx), float(x), R, CLOSED_FORM_MIN, REPORTED_TOL)


def lambda_phi0(R: float) -> SharpResult:
    """Sharp constant of ``S_r / (pi - S_r)``: the minimum of ``M(., R)`` on [0, 1]."""
    R = _positive_radius(R)
    return _minimize_unit_interval(lambda a: m_ratio(a, R), R)


def lambda_weighted(g: WeightFunction, R: float) -> SharpResult:
    """Sharp constant of ``g(|f(0)|) S_r / (pi - S_r)``."""
    R = _positive_radius(R)
    grid = np.linspace(0.0, 1.0, COARSE_POINTS)
    if not np.all(np.asarray(g(grid)) > 0):
        raise NonPositiveWeight(f"weight {getattr(g, 'name', g)} is not positive on [0, 1]")
    return _minimize_unit_interval(lambda a: m_ratio(a, R) / g(a), R)


# -- critical polynomial and a*(r) -------------------------------------------


@dataclass(frozen=True)
class Poly7:
    """``p_r``, coefficients from degree 7 down to the constant term."""

    coeffs: tuple

    def __call__(self, x):
        return np.polyval(self.coeffs, x)

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coeffs) if c != 0]
        return len(self.coeffs) - 1 - nz[0] if nz else 0

    def roots_in(self, lo: float = 0.0, hi: float = 1.0, cells: int = SIGN_SCAN_CELLS,
                 width: float = BISECT_WIDTH) -> list[float]:
        """Real roots in ``(lo, hi)`` by a sign scan followed by bisection."""
        x = np.linspace(lo, hi, cells + 1)
        y = self(x)
        roots = []
        for k in range(cells):
            if y[k] == 0.0 and 0 < k:
                roots.append(float(x[k]))
            elif y[k] * y[k + 1] < 0.0:
                roots.append(self._bisect(x[k], x[k + 1], y[k], width))
        return roots

    def _bisect(self, a: float, b: float, fa: float, width: float) -> float:
        while b - a > width:
            m = 0.5 * (a + b)
            fm = self(m)
            if fm == 0.0:
                return float(m)
            if (fm < 0) == (fa < 0):
                a, fa = m, fm
            else:
                b = m
        return float(0.5 * (a + b))


def critical_poly(r: float) -> Poly7:
    """Numerator of ``dM/da`` (up to the positive factor ``1 - r^2``)."""
    r = radius(r)
    return Poly7((
        2 * r**4,
        2 * (r - 2) * r**3,
        r**2 * (-7 * r**2 - 4 * r + 1),
        r**2 * (-3 * r**2 + 12 * r + 1),
        2 * r**2 * (2 * r + 1),
        2 * r * (r - 4),
        -(r**2 - 3),
        -(r**2) - 1,
    ))


def critical_roots(r: float) -> list[float]:
    return critical_poly(r).roots_in(0.0, 1.0)


def astar(r: float) -> float:
    """Interior minimiser of ``M(., r)`` located as a root of ``p_r``.

    When several roots lie in (0, 1) the one with the smallest ``M`` wins,
    near-ties going to the smaller root.
    """
    r = radius(r)
    if not 0.0 < r < THIRD:
        raise DomainError(f"a*(r) is an interior minimiser only for 0 < r < 1/3, got {r}")
    roots = critical_roots(r)
    if not roots:
        raise BoundaryMinimum(f"p_r has no root in (0, 1) at r = {r}")
    values = [m_ratio(x, r) for x in roots]
    best = min(values)
    return next(x for x, v in zip(roots, values) if v <= best + 1e-12)


# -- envelopes ---------------------------------------------------------------


def lambda_bounds(R: float) -> BoundPair:
    R = _positive_radius(R)
    q = (1.0 - R * R) / (R * R)
    lower = 2.0 / 9.0 * q
    upper = (81.0 - R * R) * (3.0 - 5.0 * R) / (3.0 - R) * q / 96.0
    return BoundPair(lower, upper)


def _phi0_term(a, r, lam):
    return lam * phi0_mobius(a, r)


def envelope_c1(a, r, lam):
    return a + r * (1.0 - a * a) / (1.0 - a * r) + _phi0_term(a, r, lam)


def envelope_c2(a, r, lam):
    return a + r * np.sqrt((1.0 - a * a) / (1.0 - r * r)) + _phi0_term(a, r, lam)


# -- generic Moebius-family infimum ------------------------------------------


def _mobius_ratio(phi: MobiusEvaluator, a, r):
    """``Upsilon(phi_a, r) / phi(a, r)`` with 0/0 mapped to nan and c/0 to inf."""
    a = np.asarray(a, dtype=float)
    r = np.asarray(r, dtype=float)
    num = np.broadcast_to(upsilon_mobius(a, r), np.broadcast_shapes(a.shape, r.shape))
    den = np.broadcast_to(np.asarray(phi(a, r), dtype=float), num.shape)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / den
    out = np.where((den == 0.0) & (num == 0.0), np.nan, out)
    out = np.where((den == 0.0) & (num > 0.0), np.inf, out)
    return out


def _nan_as_inf(x: float) -> float:
    return math.inf if math.isnan(x) else x


def _corner_limits(phi: MobiusEvaluator, r: np.ndarray) -> np.ndarray:
    """Limit of the ratio as ``a -> 1`` along each radius, by Richardson extrapolation."""
    eps = 2.0**-14
    f1 = _mobius_ratio(phi, 1.0 - eps, r)
    f2 = _mobius_ratio(phi, 1.0 - eps / 2.0, r)
    with np.errstate(invalid="ignore"):
        lim = 2.0 * f2 - f1
    return np.where(np.isfinite(lim), lim, np.inf)


def lambda_generic_mobius(phi: MobiusEvaluator, R: float, r_monotone: bool = False,
                          grid: int = GENERIC_GRID) -> SharpResult:
    """Infimum of ``Upsilon(phi_a, r) / phi(phi_a, r)`` over ``[0, 1] x [0, R]``.

    This is the sharp constant of ``phi`` whenever the Moebius reduction
    applies; the caller vouches for that.  With ``r_monotone`` the search is
    restricted to ``r = R``.
    """
    R = _positive_radius(R)
    a_grid = np.linspace(0.0, 1.0, grid)
    r_grid = np.array([R]) if r_monotone else np.linspace(0.0, R, grid)
    values = _mobius_ratio(phi, a_grid[:, None], r_grid[None, :])
    finite = np.where(np.isnan(values), np.inf, values)
    i, j = np.unravel_index(int(np.argmin(finite)), finite.shape)
    best_a, best_r, best = float(a_grid[i]), float(r_grid[j]), float(finite[i, j])

    da = a_grid[1] - a_grid[0]
    dr = (r_grid[1] - r_grid[0]) if r_grid.size > 1 else 0.0
    if math.isfinite(best):
        for _ in range(3):
            # the a -> 1 corner loses relative accuracy; it is covered by _corner_limits
            a_lo, a_hi = max(best_a - da, 0.0), min(best_a + da, 1.0 - CORNER_GUARD)
            x, fx = golden_section(lambda t: _nan_as_inf(float(_mobius_ratio(phi, t, best_r))), a_lo, a_hi)
            if fx < best:
                best_a, best = x, fx
            if dr > 0.0:
                r_lo, r_hi = max(best_r - dr, 0.0), min(best_r + dr, R)
                y, fy = golden_section(lambda s: _nan_as_inf(float(_mobius_ratio(phi, best_a, s))), r_lo, r_hi)
                if fy < best:
                    best_r, best = y, fy
    method = GRID_REFINE

    r_pos = r_grid[r_grid > 0.0]
    corners = _corner_limits(phi, r_pos)
    if corners.size and np.min(corners) < best:
        k = int(np.argmin(corners))
        best, best_a, best_r, method = float(corners[k]), 1.0, float(r_pos[k]), BOUNDARY_LIMIT
    return SharpResult(max(best, 0.0), best_a, best_r, method, REPORTED_TOL)


# -- condition and feasibility checkers --------------------------------------


@dataclass
class ConditionReport:
    passed: bool
    max_increase: float  # largest relative rise of J / phi between neighbouring grid points
    worst_a: float
    worst_r: float
    tolerance: float
    condition_i: str = "caller-asserted"


def condition_check(phi: MobiusEvaluator, R: float, grid: int = GENERIC_GRID,
                    tolerance: float = 1e-12) -> ConditionReport:
    """Grid check that ``a -> J(a, r) / phi(phi_a, r)`` decreases on ``[0, r]`` for ``r <= R``.

    That monotonicity is sufficient for the second Moebius-reduction
    condition.  The first condition (``phi(f, r) <= phi(phi_|a0|, r)``) cannot
    be decided from Moebius data and is reported as caller-asserted.
    """
    R = _positive_radius(R)
    r = np.linspace(0.0, R, grid + 1)[1:]
    t = np.linspace(0.0, 1.0, grid)
    a = r[:, None] * t[None, :]
    rr = np.broadcast_to(r[:, None], a.shape)
    with np.errstate(divide="ignore", invalid="ignore"):
        q = j_factor(a, rr) / np.asarray(phi(a, rr), dtype=float)
        rise = np.diff(q, axis=1) / np.abs(q[:, :-1])
    rise = np.where(np.isfinite(rise), rise, -np.inf)
    k = np.unravel_index(int(np.argmax(rise)), rise.shape)
    worst = float(rise[k])
    return ConditionReport(
        passed=worst <= tolerance,
        max_increase=max(worst, 0.0),
        worst_a=float(a[k[0], k[1] + 1]),
        worst_r=float(r[k[0]]),
        tolerance=tolerance,
    )


@dataclass
class FeasibilityReport:
    feasible: bool
    lambda_third: float
    vanishing_at_one: bool  # phi(phi_a, r) -> 0 as a -> 1 on the probe sequence
    probe: dict = field(default_factory=dict)


def feasibility_check(phi: MobiusEvaluator, threshold: float = 1e-9) -> FeasibilityReport:
    lam = lambda_generic_mobius(phi, THIRD).lam
    a_seq = 1.0 - 10.0 ** -np.arange(2, 9)
    probe = {}
    vanishing = True
    for r in (0.1, 0.2, THIRD):
        v = np.abs(np.asarray(phi(a_seq, np.full_like(a_seq, r)), dtype=float))
        probe[r] = v.tolist()
        vanishing &= bool(v[-1] < 1e-6 and np.all(np.diff(v) <= 0))
    return FeasibilityReport(lam > threshold, lam, vanishing, probe)
