"""Certification of the Bohr-type inequalities on concrete function populations.

Every check evaluates a left-hand side as an :class:`Enclosure`.  A sample
passes when the upper end stays below ``1 + VIOLATION_THRESHOLD``; a violation
is only recorded when the *lower* end exceeds that level, so truncation and
rounding can never manufacture a counterexample.  Samples whose enclosure
straddles the threshold are counted as undecided.
"""

from __future__ import annotations

import functools
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DomainError
from .functionals import (
    PAPER_EXAMPLE_WEIGHT,
    THIRD,
    Enclosure,
    WeightFunction,
    bohr_sum,
    mobius_bohr_sum,
    phi0,
    phi0_mobius,
    psi_functional,
    radius,
)
from .series import DEFAULT_ORDER, FAMILY_WEIGHTS, SchurFunction, population
from .sharp import _mobius_ratio, golden_section, lambda_phi0

VIOLATION_THRESHOLD = 1e-9
DEFAULT_SAMPLES = 1000
DEFAULT_RADII = 20

CLASSIC = "classic"
PHI0_16_9 = "phi0_with_16_9"
PHI0_LAMBDA_R = "phi0_with_lambda_R"
WEIGHTED_G = "weighted_g"
PSI_1 = "psi_with_1"
IMPROVED_KINDS = (PHI0_16_9, PHI0_LAMBDA_R, WEIGHTED_G, PSI_1)

WEIGHTED_EXAMPLE_LAMBDA = 4.0 / 3.0


@dataclass(frozen=True)
class Violation:
    seed: int
    index: int
    r: float
    lhs_lo: float


@dataclass
class VerificationReport:
    suite: str
    population: dict
    radius_grid: list
    lam: float
    R: float
    max_lhs: float = -math.inf
    violations: list = field(default_factory=list)
    undecided: int = 0
    checked: int = 0

    @property
    def slack_min(self) -> float:
        return 1.0 - self.max_lhs

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "samples": self.population.get("samples"),
            "seed": self.population.get("seed"),
            "R": self.R,
            "lambda": self.lam,
            "slack_min": self.slack_min,
            "max_lhs": self.max_lhs,
            "undecided": self.undecided,
            "checked": self.checked,
            "population": self.population,
            "radius_grid": list(self.radius_grid),
            "violations": [asdict(v) for v in self.violations],
        }


def radius_grid(R: float = THIRD, steps: int = DEFAULT_RADII) -> list[float]:
    """``steps`` radii from 0 to ``R``, both ends included."""
    R = radius(R)
    return [float(r) for r in np.linspace(0.0, R, steps)]


@functools.lru_cache(maxsize=8)
def cached_population(samples: int, seed: int, N: int = DEFAULT_ORDER) -> tuple:
    return tuple(population(samples, seed, N))


def _descriptor(samples, seed, N, explicit: bool) -> dict:
    if explicit:
        return {"families": "explicit", "samples": samples, "seed": seed, "order": N}
    return {"families": dict(FAMILY_WEIGHTS), "samples": samples, "seed": seed, "order": N}


def lhs_enclosure(f: SchurFunction, r: float, kind: str, lam: float = 0.0,
                  g: WeightFunction = PAPER_EXAMPLE_WEIGHT) -> Enclosure:
    """Left-hand side ``Bohr sum + lam * functional`` for one of the suite kinds."""
    bohr = bohr_sum(f, r)
    if kind == CLASSIC:
        return bohr
    if kind in (PHI0_16_9, PHI0_LAMBDA_R):
        return bohr + phi0(f, r).scale(lam)
    if kind == WEIGHTED_G:
        return bohr + phi0(f, r).scale(lam * float(g(f.a0_mod)))
    if kind == PSI_1:
        return bohr + Enclosure.around(lam * psi_functional(f.a0_mod, r))
    raise DomainError(f"unknown suite kind {kind!r}")


def _run(kind: str, lam: float, R: float, functions, grid, descriptor) -> VerificationReport:
    report = VerificationReport(kind, descriptor, list(grid), lam, R)
    seed = descriptor["seed"]
    for index, f in enumerate(functions):
        for r in grid:
            lhs = lhs_enclosure(f, r, kind, lam)
            report.checked += 1
            report.max_lhs = max(report.max_lhs, lhs.hi)
            if lhs.lo > 1.0 + VIOLATION_THRESHOLD:
                report.violations.append(Violation(seed, index, r, lhs.lo))
            elif lhs.hi > 1.0 + VIOLATION_THRESHOLD:
                report.undecided += 1
    return report


def _functions(samples, seed, N, functions):
    if functions is not None:
        functions = list(functions)
        return functions, _descriptor(len(functions), seed, N, True)
    return cached_population(samples, seed, N), _descriptor(samples, seed, N, False)


def verify_bohr_classic(samples: int = DEFAULT_SAMPLES, seed: int = 0, r_grid=None,
                        N: int = DEFAULT_ORDER, functions=None) -> VerificationReport:
    """Certify ``sum |a_n| r^n <= 1`` for ``r <= 1/3``."""
    grid = radius_grid() if r_grid is None else [radius(r) for r in r_grid]
    fs, desc = _functions(samples, seed, N, functions)
    return _run(CLASSIC, 0.0, max(grid), fs, grid, desc)


def claimed_constant(kind: str, R: float = THIRD) -> float:
    if kind == PHI0_16_9:
        return 16.0 / 9.0
    if kind == PHI0_LAMBDA_R:
        return lambda_phi0(R).lam
    if kind == WEIGHTED_G:
        return WEIGHTED_EXAMPLE_LAMBDA
    if kind == PSI_1:
        return 1.0
    raise DomainError(f"unknown suite kind {kind!r}")


def verify_improved(kind: str, R: float = THIRD, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                    N: int = DEFAULT_ORDER, functions=None, r_steps: int = DEFAULT_RADII,
                    r_grid=None) -> VerificationReport:
    """Certify ``sum |a_n| r^n + lam * phi(f, r) <= 1`` for ``r <= R``."""
    if kind not in IMPROVED_KINDS:
        raise DomainError(f"unknown improved suite {kind!r}")
    R = radius(R)
    if kind == PHI0_LAMBDA_R and R == 0.0:
        raise DomainError("Lambda(R) needs R > 0")
    lam = claimed_constant(kind, R)
    grid = radius_grid(R, r_steps) if r_grid is None else [radius(r) for r in r_grid]
    fs, desc = _functions(samples, seed, N, functions)
    return _run(kind, lam, R, fs, grid, desc)


def witness_beyond_third(r: float) -> tuple[float, float]:
    """Moebius parameter whose Bohr sum at radius ``r > 1/3`` exceeds 1.

    The Bohr sum of ``phi_a`` exceeds 1 exactly when ``a > (1/r - 1)/2``; the
    returned ``a`` maximises it on that range.
    """
    r = float(r)
    if not THIRD < r < 1.0:
        raise DomainError(f"witnesses exist only for 1/3 < r < 1, got {r}")
    threshold = (1.0 / r - 1.0) / 2.0
    a, neg = golden_section(lambda t: -mobius_bohr_sum(t, r), threshold, 1.0)
    if not -neg > 1.0:
        a = 0.5 * (threshold + 1.0)
    return float(a), float(mobius_bohr_sum(a, r))


def _mobius_functional(kind: str):
    if kind in (PHI0_16_9, PHI0_LAMBDA_R):
        return phi0_mobius
    if kind == WEIGHTED_G:
        return lambda a, r: PAPER_EXAMPLE_WEIGHT(a) * phi0_mobius(a, r)
    if kind == PSI_1:
        return psi_functional
    raise DomainError(f"unknown suite kind {kind!r}")


@dataclass(frozen=True)
class ProbeResult:
    min_ratio: float
    a: float
    r: float
    claimed: float
    holds: bool  # min_ratio <= claimed (1 + 1e-6): no larger constant can work


def sharpness_probe(kind: str, R: float = THIRD, density: int = 1000) -> ProbeResult:
    """Smallest ``Upsilon / phi`` over a Moebius grid, with ``a`` pushed towards 1."""
    R = radius(R)
    phi = _mobius_functional(kind)
    a = np.concatenate([np.linspace(0.0, 1.0, density)[:-1], 1.0 - 10.0 ** -np.arange(1, 8)])
    r = np.linspace(0.0, R, density)[1:]
    ratio = _mobius_ratio(phi, a[:, None], r[None, :])
    ratio = np.where(np.isfinite(ratio), ratio, np.inf)
    i, j = np.unravel_index(int(np.argmin(ratio)), ratio.shape)
    claimed = claimed_constant(kind, R)
    m = float(ratio[i, j])
    return ProbeResult(m, float(a[i]), float(r[j]), claimed, m <= claimed * (1.0 + 1e-6))


@dataclass(frozen=True)
class DominanceReport:
    passed: bool
    max_excess: float  # max of (16/9) phi0 - Psi on the grid
    worst_a: float
    worst_r: float
    scalar_min: float  # min of (1 - 2r)(1 + r^2 + r^4)/r^2 on (0, 1/3]
    scalar_at_third: float


def _dominance_scalar(r):
    return (1.0 - 2.0 * r) * (1.0 + r * r + r**4) / (r * r)


def dominance_check(density: int = 1000) -> DominanceReport:
    """``(16/9) phi0(phi_a, r) <= Psi(a, r)`` on a grid and the 91/27 scalar bound."""
    a = np.linspace(0.0, 1.0, density)
    r = np.linspace(0.0, THIRD, density)
    excess = 16.0 / 9.0 * phi0_mobius(a[:, None], r[None, :]) - psi_functional(a[:, None], r[None, :])
    i, j = np.unravel_index(int(np.argmax(excess)), excess.shape)
    rs = np.linspace(0.0, THIRD, 100 * density + 1)[1:]
    scalar = _dominance_scalar(rs)
    at_third = float(_dominance_scalar(THIRD))
    passed = bool(excess[i, j] <= 1e-12 and scalar.min() >= 91.0 / 27.0 - 1e-9)
    return DominanceReport(passed, float(excess[i, j]), float(a[i]), float(r[j]),
                           float(scalar.min()), at_third)


@dataclass
class SpotCheckReport:
    population: dict
    radius_grid: list
    max_excess: float = -math.inf  # max of phi0(f, r).hi - phi0(phi_|a0|, r)
    violations: list = field(default_factory=list)
    checked: int = 0

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "suite": "condition-i",
            "samples": self.population.get("samples"),
            "seed": self.population.get("seed"),
            "R": max(self.radius_grid),
            "max_excess": self.max_excess,
            "slack_min": -self.max_excess,
            "checked": self.checked,
            "population": self.population,
            "radius_grid": list(self.radius_grid),
            "violations": [asdict(v) for v in self.violations],
        }


def condition_i_spotcheck(samples: int = DEFAULT_SAMPLES, seed: int = 0, r_grid=None,
                          N: int = DEFAULT_ORDER, functions=None) -> SpotCheckReport:
    """Randomised check of ``phi0(f, r) <= phi0(phi_|f(0)|, r)``.

    ``psi`` depends on ``|f(0)|`` only, so the same domination holds for it
    with equality and is not re-checked here.
    """
    grid = radius_grid() if r_grid is None else [radius(r) for r in r_grid]
    fs, desc = _functions(samples, seed, N, functions)
    report = SpotCheckReport(desc, list(grid))
    for index, f in enumerate(fs):
        for r in grid:
            enc = phi0(f, r)
            bound = float(phi0_mobius(f.a0_mod, r))
            report.checked += 1
            report.max_excess = max(report.max_excess, enc.hi - bound)
            if enc.lo > bound + VIOLATION_THRESHOLD:
                report.violations.append(Violation(desc["seed"], index, r, enc.lo))
    return report
