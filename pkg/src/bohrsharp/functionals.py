"""Bohr-type functionals, from series (with tail enclosures) and in closed form.

Series-based evaluators return an :class:`Enclosure`: the truncation tail is
bounded with the coefficient estimate ``|a_n| <= 1 - |a_0|^2`` and folded into
the upper end, and both ends are pushed outward by a few ulps to absorb
rounding.  The closed forms for the Moebius family ``phi_a`` are plain floats
and accept numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, NonPositiveWeight, NotInSchurClass
from .series import SchurFunction

THIRD = 1.0 / 3.0
ULP_SLOP = 4

LOOSE_SQRT_1_MINUS_R = "sqrt_1_minus_r"
CONSISTENT_SQRT_1_MINUS_R2 = "consistent_sqrt_1_minus_r2"
TAIL_VARIANTS = (LOOSE_SQRT_1_MINUS_R, CONSISTENT_SQRT_1_MINUS_R2)


def radius(r: float) -> float:
    """Validate a radius in ``[0, 1/3]``."""
    r = float(r)
    if not 0.0 <= r <= THIRD:
        raise DomainError(f"radius must lie in [0, 1/3], got {r}")
    return r


def _down(x: float) -> float:
    return x - ULP_SLOP * math.ulp(x)


def _up(x: float) -> float:
    return x + ULP_SLOP * math.ulp(x)


@dataclass(frozen=True)
class Enclosure:
    """Closed interval certified to contain an exact value."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def around(cls, lo: float, hi: float | None = None) -> "Enclosure":
        """Outward-rounded enclosure of ``[lo, hi]``."""
        hi = lo if hi is None else hi
        return cls(_down(lo), _up(hi))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other):
        if isinstance(other, Enclosure):
            return Enclosure.around(self.lo + other.lo, self.hi + other.hi)
        return Enclosure.around(self.lo + other, self.hi + other)

    __radd__ = __add__

    def scale(self, lam: float) -> "Enclosure":
        if lam < 0:
            raise ValueError("only nonnegative scalings keep the ends ordered")
        return Enclosure.around(lam * self.lo, lam * self.hi)

    def reversed_from(self, c: float) -> "Enclosure":
        """Enclosure of ``c - x`` for x in self."""
        return Enclosure.around(c - self.hi, c - self.lo)


@dataclass(frozen=True)
class WeightFunction:
    """Positive weight ``g`` on [0, 1], applied to ``|f(0)|``."""

    evaluator: Callable
    monotonicity_claim: str = "unknown"  # "increasing" or "unknown"
    name: str = "g"

    def __call__(self, a):
        return self.evaluator(a)

    def check(self, points: int = 10_000) -> None:
        """Check positivity, and the monotonicity claim if one is made, on a grid."""
        a = np.linspace(0.0, 1.0, points)
        v = np.asarray(self.evaluator(a), dtype=float) * np.ones_like(a)
        if not np.all(v > 0):
            raise NonPositiveWeight(f"{self.name} is not positive on [0, 1]")
        if self.monotonicity_claim == "increasing" and np.any(np.diff(v) < 0):
            raise DomainError(f"{self.name} is claimed increasing but decreases on the grid")


def _paper_example_g(a):
    a = np.asarray(a, dtype=float)
    return (9.0 - a**2) / ((2.0 + a**2) * (3.0 - a))


def _printed_example_g(a):
    a = np.asarray(a, dtype=float)
    return (9.0 + a**4) / ((2.0 + a**2) * (3.0 - a))


# g(0) = 3/2, g(1) = 4/3; the weight behind the Lambda(1/3) = 4/3 example
PAPER_EXAMPLE_WEIGHT = WeightFunction(_paper_example_g, "unknown", "paper_example")
# the same example with the a^4 numerator as typeset; g(1) = 5/3 and Lambda(1/3) = 16/15
PRINTED_EXAMPLE_WEIGHT = WeightFunction(_printed_example_g, "unknown", "printed_example")
UNIT_WEIGHT = WeightFunction(lambda a: np.ones_like(np.asarray(a, dtype=float)), "increasing", "one")


# -- series-based evaluators -------------------------------------------------


def _majorant_terms(f: SchurFunction, r: float) -> np.ndarray:
    n = np.arange(f.order + 1, dtype=float)
    return np.abs(f.coeffs) * np.power(r, n)


def bohr_tail_width(a0: float, r: float, N: int) -> float:
    """Upper bound for ``sum_{n>N} |a_n| r^n``."""
    return (1.0 - a0 * a0) * r ** (N + 1) / (1.0 - r)


def area_tail_width(a0: float, r: float, N: int) -> float:
    """Upper bound for ``sum_{n>N} n |a_n|^2 r^(2n)``."""
    x = r * r
    return (1.0 - a0 * a0) ** 2 * x ** (N + 1) * ((N + 1) - N * x) / (1.0 - x) ** 2


def bohr_sum(f: SchurFunction, r: float) -> Enclosure:
    """Enclosure of the majorant series ``sum |a_n| r^n``."""
    r = radius(r)
    lo = math.fsum(_majorant_terms(f, r))
    return Enclosure.around(lo, lo + bohr_tail_width(f.a0_mod, r, f.order))


def bohr_tail(f: SchurFunction, r: float) -> Enclosure:
    """Enclosure of ``sum_{n>=1} |a_n| r^n``."""
    r = radius(r)
    lo = math.fsum(_majorant_terms(f, r)[1:])
    return Enclosure.around(lo, lo + bohr_tail_width(f.a0_mod, r, f.order))


def upsilon(f: SchurFunction, r: float) -> Enclosure:
    """Slack ``1 - sum |a_n| r^n`` left in Bohr's inequality."""
    return bohr_sum(f, r).reversed_from(1.0)


def area_ratio(f: SchurFunction, r: float) -> Enclosure:
    """Enclosure of ``S_r / pi = sum n |a_n|^2 r^(2n)``."""
    r = radius(r)
    n = np.arange(f.order + 1, dtype=float)
    lo = math.fsum(n * np.abs(f.coeffs) ** 2 * np.power(r * r, n))
    return Enclosure.around(lo, lo + area_tail_width(f.a0_mod, r, f.order))


def phi0(f: SchurFunction, r: float) -> Enclosure:
    """Enclosure of ``S_r / (pi - S_r)``."""
    s = area_ratio(f, r)
    if s.hi >= 1.0:
        raise NotInSchurClass(f"S_r/pi reaches {s.hi}; the input is not bounded by 1")
    return Enclosure.around(max(s.lo, 0.0) / (1.0 - max(s.lo, 0.0)), s.hi / (1.0 - s.hi))


# -- closed forms on the Moebius family --------------------------------------


def mobius_bohr_sum(a, r):
    """``a + r (1 - a^2) / (1 - a r)``; also meaningful for r > 1/3."""
    return a + r * (1.0 - a * a) / (1.0 - a * r)


def upsilon_mobius(a, r):
    """``1 - a - r (1 - a^2) / (1 - a r)``, evaluated in factored form.

    ``(1 - a)(1 - r(1 + 2a)) / (1 - a r)`` with ``1 - r(1 + 2a)`` written as
    ``(1 - 3r) + 2r(1 - a)`` keeps full relative accuracy as ``a -> 1``.
    """
    return (1.0 - a) * ((1.0 - 3.0 * r) + 2.0 * r * (1.0 - a)) / (1.0 - a * r)


def phi0_mobius(a, r):
    return r * r / (1.0 - r * r) * ((1.0 - a) * (1.0 + a)) ** 2 / (1.0 - a**4 * r * r)


def j_factor(a, r):
    return 1.0 - a - r * np.sqrt(1.0 - a * a) / np.sqrt(1.0 - r * r)


def tail_bound(a0, r, variant: str = CONSISTENT_SQRT_1_MINUS_R2):
    """Bound on ``sum_{n>=1} |a_n| r^n`` in terms of ``|a_0|``.

    For ``|a_0| >= r`` this is attained by ``phi_{|a_0|}``.  Below ``r`` the
    two variants differ only in the square root of the denominator.
    """
    if variant not in TAIL_VARIANTS:
        raise DomainError(f"unknown tail-bound variant {variant!r}")
    a0 = np.asarray(a0, dtype=float)
    upper = r * (1.0 - a0 * a0) / (1.0 - r * a0)
    denom = math.sqrt(1.0 - r) if variant == LOOSE_SQRT_1_MINUS_R else math.sqrt(1.0 - r * r)
    lower = r * np.sqrt(np.clip(1.0 - a0 * a0, 0.0, None)) / denom
    out = np.where(a0 >= r, upper, lower)
    return float(out) if out.ndim == 0 else out


def psi_functional(a0, r):
    """``Psi(a, r)``: the Moebius slack for ``a >= r``, ``J(a, r)`` below."""
    a0 = np.asarray(a0, dtype=float)
    out = np.where(a0 >= r, upsilon_mobius(a0, r), j_factor(np.minimum(a0, 1.0), r))
    return float(out) if out.ndim == 0 else out


def psi(f: SchurFunction, r: float) -> float:
    return psi_functional(f.a0_mod, radius(r))


def weighted_phi0_mobius(g: WeightFunction, a, r):
    return g(a) * phi0_mobius(a, r)
