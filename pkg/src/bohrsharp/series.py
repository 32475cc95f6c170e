"""Truncated power series and generators for the Schur class.

A :class:`TruncatedSeries` holds the first ``N + 1`` Taylor coefficients of a
holomorphic function at the origin.  Arithmetic is jet arithmetic: the
coefficients ``c_0 .. c_N`` of a product or quotient are exact up to floating
point rounding, nothing beyond order ``N`` is tracked.

Schur-class functions (holomorphic on the unit disk, bounded by 1) are built
from Moebius maps, finite Blaschke products, Schur parameters and convex
combinations.  Every :class:`SchurFunction` remembers how it was built so it
can also be evaluated pointwise from its rational form, independently of the
series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np
from scipy.signal import lfilter

from .errors import ContractViolation, DivisionByZeroConstantTerm, DomainError

DEFAULT_ORDER = 256

# generator moduli stay away from the unit circle to keep reciprocal jets tame
GENERATOR_MODULUS_CAP = 0.9
MAX_BLASCHKE_DEGREE = 6
MAX_SCHUR_DEPTH = 8
MAX_COMBO_MEMBERS = 3

# population mix: Blaschke, Schur parameters, rotations of those, convex combos
FAMILY_WEIGHTS = {"blaschke": 0.4, "schur": 0.4, "rotation": 0.1, "combo": 0.1}


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            raise ContractViolation("a truncated series needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def constant(cls, value: complex, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = value
        return cls(c)

    @classmethod
    def from_coeffs(cls, values: Sequence[complex], order: int) -> "TruncatedSeries":
        """Pad or cut ``values`` to exactly ``order + 1`` coefficients."""
        c = np.zeros(order + 1, dtype=np.complex128)
        values = np.asarray(values, dtype=np.complex128)[: order + 1]
        c[: values.size] = values
        return cls(c)

    def shift(self) -> "TruncatedSeries":
        """Multiply by ``z``, dropping the coefficient pushed past order N."""
        c = np.zeros_like(self.coeffs)
        c[1:] = self.coeffs[:-1]
        return TruncatedSeries(c)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            _check_orders(self, other)
            return TruncatedSeries(self.coeffs + other.coeffs)
        c = self.coeffs.copy()
        c[0] += other
        return TruncatedSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_div(self, other)
        return TruncatedSeries(self.coeffs / other)

    def __len__(self):
        return self.coeffs.size

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None


def _check_orders(A: TruncatedSeries, B: TruncatedSeries) -> None:
    if A.order != B.order:
        raise ContractViolation(f"series orders differ: {A.order} != {B.order}")


def series_mul(A: TruncatedSeries, B: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the common order."""
    _check_orders(A, B)
    n = A.order + 1
    return TruncatedSeries(np.convolve(A.coeffs, B.coeffs)[:n])


def series_div(A: TruncatedSeries, B: TruncatedSeries) -> TruncatedSeries:
    """Quotient ``A / B`` as a jet, by the forward substitution recursion."""
    _check_orders(A, B)
    b = _trimmed(B.coeffs)
    if abs(b[0]) < 1e-300:
        raise DivisionByZeroConstantTerm("constant term of the divisor vanishes")
    # lfilter runs y_n = (x_n - sum_{k>=1} b_k y_{n-k}) / b_0, i.e. series division
    return TruncatedSeries(lfilter([1.0], b, A.coeffs))


def series_reciprocal(A: TruncatedSeries) -> TruncatedSeries:
    return series_div(TruncatedSeries.constant(1.0, A.order), A)


def _trimmed(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    if nz.size == 0:
        return c[:1]
    return c[: nz[-1] + 1]


# -- provenance records ------------------------------------------------------


@dataclass(frozen=True)
class Mobius:
    a: float


@dataclass(frozen=True)
class Blaschke:
    zeros: tuple
    rotation: float = 0.0


@dataclass(frozen=True)
class SchurParams:
    params: tuple


@dataclass(frozen=True)
class ConvexCombo:
    members: tuple
    weights: tuple


@dataclass(frozen=True)
class Constant:
    value: complex


Provenance = Union[Mobius, Blaschke, SchurParams, ConvexCombo, Constant]


@dataclass(frozen=True)
class SchurFunction:
    """A function of the Schur class, as a jet plus the recipe that built it."""

    series: TruncatedSeries
    provenance: Provenance
    a0_mod: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "a0_mod", float(abs(self.series.coeffs[0])))

    @property
    def coeffs(self) -> np.ndarray:
        return self.series.coeffs

    @property
    def order(self) -> int:
        return self.series.order

    def evaluate(self, z):
        """Evaluate the exact (untruncated) function from its provenance."""
        return _evaluate(self.provenance, np.asarray(z, dtype=np.complex128))

    def coefficient_bound_excess(self) -> float:
        """Largest ``|c_n| - (1 - |c_0|^2)`` over ``n >= 1``; <= 0 in exact arithmetic."""
        if self.order == 0:
            return -math.inf
        bound = 1.0 - self.a0_mod**2
        return float(np.max(np.abs(self.coeffs[1:])) - bound)


def _evaluate(prov: Provenance, z: np.ndarray):
    if isinstance(prov, Mobius):
        return (z - prov.a) / (1.0 - prov.a * z)
    if isinstance(prov, Blaschke):
        w = np.full_like(z, cmath.exp(1j * prov.rotation))
        for alpha in prov.zeros:
            w = w * (z - alpha) / (1.0 - np.conj(alpha) * z)
        return w
    if isinstance(prov, SchurParams):
        w = np.zeros_like(z)
        for gamma in reversed(prov.params):
            zw = z * w
            w = (gamma + zw) / (1.0 + np.conj(gamma) * zw)
        return w
    if isinstance(prov, ConvexCombo):
        return sum(wt * _evaluate(m.provenance, z) for m, wt in zip(prov.members, prov.weights))
    if isinstance(prov, Constant):
        return np.full_like(z, prov.value)
    raise TypeError(f"unknown provenance {prov!r}")


# -- constructors ------------------------------------------------------------


def mobius(a: float, N: int = DEFAULT_ORDER) -> SchurFunction:
    """The disk automorphism ``(z - a) / (1 - a z)``; ``a = 1`` gives the constant -1.

    Coefficients are ``-a`` followed by ``(1 - a^2) a^(n-1)``.
    """
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"Moebius parameter must lie in [0, 1], got {a}")
    c = np.zeros(N + 1, dtype=np.complex128)
    c[0] = -a
    if N >= 1:
        c[1:] = (1.0 - a * a) * a ** np.arange(N, dtype=float)
    return SchurFunction(TruncatedSeries(c), Mobius(a))


def constant(value: complex, N: int = DEFAULT_ORDER) -> SchurFunction:
    if abs(value) > 1.0:
        raise DomainError(f"constant {value} has modulus > 1")
    return SchurFunction(TruncatedSeries.constant(value, N), Constant(complex(value)))


def blaschke(zeros: Sequence[complex], rotation: float = 0.0, N: int = DEFAULT_ORDER) -> SchurFunction:
    zeros = tuple(complex(alpha) for alpha in zeros)
    for alpha in zeros:
        if abs(alpha) >= 1.0:
            raise DomainError(f"Blaschke zero {alpha} is not inside the unit disk")
    f = TruncatedSeries.constant(cmath.exp(1j * rotation), N)
    for alpha in zeros:
        num = TruncatedSeries.from_coeffs([-alpha, 1.0], N)
        den = TruncatedSeries.from_coeffs([1.0, -alpha.conjugate()], N)
        f = f * (num / den)
    return SchurFunction(f, Blaschke(zeros, float(rotation)))


def schur_from_parameters(params: Sequence[complex], N: int = DEFAULT_ORDER) -> SchurFunction:
    """Run the Schur recursion backwards from the zero function.

    ``f_j = (g_j + z f_{j+1}) / (1 + conj(g_j) z f_{j+1})``; the denominator
    always has constant term 1.
    """
    params = tuple(complex(g) for g in params)
    for g in params:
        if abs(g) >= 1.0:
            raise DomainError(f"Schur parameter {g} is not inside the unit disk")
    f = TruncatedSeries.constant(0.0, N)
    for g in reversed(params):
        zf = f.shift()
        f = (zf + g) / (zf * g.conjugate() + 1.0)
    return SchurFunction(f, SchurParams(params))


def convex_combination(members: Sequence[SchurFunction], weights: Sequence[float]) -> SchurFunction:
    members = tuple(members)
    weights = tuple(float(w) for w in weights)
    if len(members) != len(weights) or not members:
        raise DomainError("need one weight per member and at least one member")
    if any(w < 0 for w in weights) or abs(math.fsum(weights) - 1.0) > 1e-12:
        raise DomainError(f"weights must be nonnegative and sum to 1, got {weights}")
    order = members[0].order
    if any(m.order != order for m in members):
        raise ContractViolation("members have different series orders")
    c = sum(w * m.coeffs for m, w in zip(members, weights))
    return SchurFunction(TruncatedSeries(c), ConvexCombo(members, weights))


def rotate(f: SchurFunction, theta: float) -> SchurFunction:
    """``e^{i theta} f``, keeping the provenance in its own family."""
    prov = f.provenance
    u = cmath.exp(1j * theta)
    if isinstance(prov, Blaschke):
        return blaschke(prov.zeros, prov.rotation + theta, f.order)
    if isinstance(prov, SchurParams):
        # rotating f multiplies every Schur parameter by the same unimodular factor
        return schur_from_parameters([u * g for g in prov.params], f.order)
    if isinstance(prov, Constant):
        return constant(u * prov.value, f.order)
    if isinstance(prov, ConvexCombo):
        return convex_combination([rotate(m, theta) for m in prov.members], prov.weights)
    # Moebius: e^{it}(z - a)/(1 - a z) is the one-zero Blaschke product
    if prov.a == 1.0:
        return constant(-u, f.order)
    return blaschke([prov.a], theta, f.order)


def _disk_point(rng: np.random.Generator, cap: float = GENERATOR_MODULUS_CAP) -> complex:
    return cmath.rect(cap * rng.random(), 2.0 * math.pi * rng.random())


def _base_member(rng: np.random.Generator, N: int) -> SchurFunction:
    if rng.random() < 0.5:
        degree = int(rng.integers(1, MAX_BLASCHKE_DEGREE + 1))
        return blaschke([_disk_point(rng) for _ in range(degree)], 0.0, N)
    depth = int(rng.integers(1, MAX_SCHUR_DEPTH + 1))
    return schur_from_parameters([_disk_point(rng) for _ in range(depth)], N)


def random_schur(seed: int, N: int = DEFAULT_ORDER, index: int | None = None) -> SchurFunction:
    """Deterministic random Schur function for ``(seed, index)``."""
    key = [seed % 2**64] if index is None else [seed % 2**64, int(index)]
    rng = np.random.default_rng(np.random.SeedSequence(key))
    u = rng.random()
    if u < FAMILY_WEIGHTS["blaschke"]:
        degree = int(rng.integers(1, MAX_BLASCHKE_DEGREE + 1))
        return blaschke([_disk_point(rng) for _ in range(degree)], 0.0, N)
    u -= FAMILY_WEIGHTS["blaschke"]
    if u < FAMILY_WEIGHTS["schur"]:
        depth = int(rng.integers(1, MAX_SCHUR_DEPTH + 1))
        return schur_from_parameters([_disk_point(rng) for _ in range(depth)], N)
    u -= FAMILY_WEIGHTS["schur"]
    if u < FAMILY_WEIGHTS["rotation"]:
        return rotate(_base_member(rng, N), 2.0 * math.pi * rng.random())
    k = int(rng.integers(1, MAX_COMBO_MEMBERS + 1))
    members = [_base_member(rng, N) for _ in range(k)]
    weights = rng.dirichlet(np.ones(k))
    weights[-1] = max(0.0, 1.0 - math.fsum(weights[:-1]))
    return convex_combination(members, weights)


def population(samples: int, seed: int, N: int = DEFAULT_ORDER) -> list[SchurFunction]:
    return [random_schur(seed, N, index=i) for i in range(samples)]
