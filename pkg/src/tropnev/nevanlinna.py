"""Nevanlinna functionals of tropical meromorphic functions and curves.

Every functional takes an explicit radius and returns an exact rational.
The only floating-point code lives in :func:`growth_fit`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence

import numpy as np

from .errors import DomainError, WindowError
from .plfun import (
    PLFunction,
    critical_points,
    pl_add,
    pl_max,
    pl_neg,
    pl_shift,
)
from .semiring import to_rational

__all__ = [
    "NevSample",
    "GrowthReport",
    "proximity",
    "counting_n",
    "counting_N",
    "counting_N_truncated",
    "characteristic_T",
    "jensen_residual",
    "inf_at_poles",
    "value_fmt_residual",
    "cartan_T",
    "log_derivative_ratio",
    "growth_fit",
    "nevanlinna_table",
]


@dataclass(frozen=True)
class NevSample:
    r: Fraction
    m: Fraction
    N: Fraction
    T: Fraction


@dataclass(frozen=True)
class GrowthReport:
    """Least-squares growth estimates.  All fitted numbers are approximate."""

    radii: List[Fraction]
    T: List[Fraction]
    order: float
    hyperorder: float
    exp_rate: float
    log_ratio: List[float] = field(default_factory=list)
    approximate: bool = True


def _radius(f: PLFunction, r) -> Fraction:
    r = to_rational(r)
    if r <= 0:
        raise DomainError(f"radius must be positive, got {r}")
    w = f.window
    if w is not None and not (w[0] <= -r and r <= w[1]):
        raise WindowError(f"radius {r} leaves the window [{w[0]}, {w[1]}]")
    return r


def _poles(f: PLFunction):
    return [(cp.location, -cp.jump) for cp in critical_points(f) if cp.jump < 0]


def proximity(f: PLFunction, r) -> Fraction:
    r = _radius(f, r)
    return (max(f(r), Fraction(0)) + max(f(-r), Fraction(0))) / 2


def counting_n(f: PLFunction, r) -> Fraction:
    r = _radius(f, r)
    return sum((t for b, t in _poles(f) if abs(b) < r), Fraction(0))


def counting_N(f: PLFunction, r) -> Fraction:
    r = _radius(f, r)
    return sum((t * (r - abs(b)) for b, t in _poles(f) if abs(b) < r), Fraction(0)) / 2


def counting_N_truncated(f: PLFunction, r, k) -> Fraction:
    """Counting function with every pole multiplicity capped at ``k``."""
    r = _radius(f, r)
    k = to_rational(k)
    if k <= 0:
        raise DomainError("truncation level must be positive")
    return sum((min(t, k) * (r - abs(b)) for b, t in _poles(f) if abs(b) < r), Fraction(0)) / 2


def characteristic_T(f: PLFunction, r) -> NevSample:
    r = to_rational(r)
    m = proximity(f, r)
    n = counting_N(f, r)
    return NevSample(r, m, n, m + n)


def jensen_residual(f: PLFunction, r) -> Fraction:
    """Difference of the two sides of Jensen's formula; zero for valid input."""
    r = _radius(f, r)
    lhs = counting_N(pl_neg(f), r) - counting_N(f, r)
    rhs = (f(r) + f(-r)) / 2 - f(0)
    return lhs - rhs


def inf_at_poles(f: PLFunction):
    """Least value of ``f`` over its poles, or ``math.inf`` without poles."""
    poles = _poles(f)
    if not poles:
        return math.inf
    return min(f(b) for b, _ in poles)


def value_fmt_residual(f: PLFunction, a, r) -> Fraction:
    """``T(r, -(f max a)) - T(r, f)``; requires ``a`` below ``f`` at every pole."""
    a = to_rational(a)
    lf = inf_at_poles(f)
    if not a < lf:
        raise DomainError(f"value {a} is not below the pole infimum {lf}")
    g = pl_neg(pl_max(f, PLFunction.constant(a)))
    return characteristic_T(g, r).T - characteristic_T(f, r).T


def cartan_T(curve, r) -> Fraction:
    """Cartan characteristic of a curve (anything with ``components``)."""
    comps = curve.components
    r = to_rational(r)
    for c in comps:
        _radius(c, r)

    def norm(x):
        return max(c(x) for c in comps)

    return (norm(r) + norm(-r)) / 2 - norm(Fraction(0))


def log_derivative_ratio(f: PLFunction, c, r) -> Fraction:
    """``m(r, f(x+c) - f(x)) / T(r, f)``."""
    c = to_rational(c)
    if c == 0:
        raise DomainError("shift c must be nonzero")
    t = characteristic_T(f, r).T
    if t == 0:
        raise DomainError(f"T(r, f) vanishes at r = {r}")
    q = pl_add(pl_shift(f, c), pl_neg(f))
    return proximity(q, r) / t


def growth_fit(samples: Sequence[NevSample]) -> GrowthReport:
    """Fit order, hyperorder and exponential rate of ``T`` on a radius grid."""
    if len(samples) < 8:
        raise DomainError("growth_fit needs at least 8 samples")
    radii = [s.r for s in samples]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise DomainError("radii must be strictly increasing")
    ts = [s.T for s in samples]
    if any(t <= 0 for t in ts):
        raise DomainError("growth_fit needs positive T samples")
    r = np.array([float(x) for x in radii])
    logt = np.log(np.array([float(t) for t in ts]))
    order = float(np.polyfit(np.log(r), logt, 1)[0])
    exp_rate = float(np.polyfit(r, logt, 1)[0])
    mask = logt > 0
    if mask.sum() >= 2:
        hyper = float(np.polyfit(np.log(r[mask]), np.log(logt[mask]), 1)[0])
    else:
        hyper = float("nan")
    return GrowthReport(radii, ts, order, hyper, exp_rate, (logt / r).tolist())


def nevanlinna_table(f: PLFunction, radii) -> List[NevSample]:
    return [characteristic_T(f, r) for r in radii]
