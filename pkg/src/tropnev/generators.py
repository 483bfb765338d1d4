"""Example families: exponential-type functions and seeded random data.

Random generators draw integers from bounded lattices and divide by a
``denominator``, so the sizes of the rationals stay small and every draw
is reproducible from its seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import DomainError
from .hypersurface import TropPolynomial, monomial_basis
from .plfun import PLFunction
from .projective import TropCurve, reduced_check
from .semiring import to_rational
from .textformat import InputDocument, emit

__all__ = [
    "ExampleSpec",
    "FAMILIES",
    "e_alpha",
    "e_beta",
    "random_rational",
    "random_entire",
    "random_curve",
    "random_poly",
    "gen_example",
]

FAMILIES = ("e_alpha", "e_beta", "rational", "random_curve", "random_poly")


@dataclass(frozen=True)
class ExampleSpec:
    family: str
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None
    window: Optional[Tuple[Fraction, Fraction]] = None
    seed: int = 0
    n: int = 1
    d: int = 1
    q: int = 3
    denominator: int = 1
    size: int = 4
    name: str = "f"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.window is not None:
            lo, hi = (to_rational(w) for w in self.window)
            if not lo < hi:
                raise DomainError("window must satisfy lo < hi")
            object.__setattr__(self, "window", (lo, hi))
        if self.family == "e_alpha":
            if self.alpha is None or abs(to_rational(self.alpha)) <= 1:
                raise DomainError("e_alpha needs |alpha| > 1")
        if self.family == "e_beta":
            if self.beta is None or abs(to_rational(self.beta)) >= 1:
                raise DomainError("e_beta needs |beta| < 1")
        if self.family in ("e_alpha", "e_beta") and self.window is None:
            raise DomainError(f"{self.family} needs a finite window")
        if self.n < 1 or self.d < 1 or self.q < 1 or self.denominator < 1 or self.size < 1:
            raise DomainError("n, d, q, denominator and size must be positive")


def _exp_type(rate: Fraction, window, closed_form, slope_of):
    lo, hi = (to_rational(w) for w in window)
    knots = list(range(math.floor(lo), math.ceil(hi) + 1))
    pts = [(Fraction(m), closed_form(m)) for m in knots]
    return PLFunction.from_points(pts, slope_of(knots[0] - 1), slope_of(knots[-1]), (lo, hi))


def e_alpha(alpha, window) -> PLFunction:
    """``alpha^[x] (x - [x] + 1/(alpha - 1))``: slope ``alpha^m`` on ``[m, m+1)``."""
    a = to_rational(alpha)
    if abs(a) <= 1:
        raise DomainError("need |alpha| > 1")
    return _exp_type(a, window, lambda m: a**m / (a - 1), lambda m: a**m)


def e_beta(beta, window) -> PLFunction:
    """``beta^[x] (1/(1 - beta) - x + [x])``: slope ``-beta^m`` on ``[m, m+1)``."""
    b = to_rational(beta)
    if abs(b) >= 1:
        raise DomainError("need |beta| < 1")
    if b == 0:
        raise DomainError("beta must be nonzero")
    return _exp_type(b, window, lambda m: b**m / (1 - b), lambda m: -(b**m))


def _lattice(rng, bound, den):
    return Fraction(rng.randint(-bound, bound), den)


def random_rational(seed: int, size: int = 4, denominator: int = 1, window=None) -> PLFunction:
    """Random tropical rational function with ``size`` knots."""
    rng = random.Random(seed)
    bound = 4 * size * denominator
    xs = sorted({_lattice(rng, bound, denominator) for _ in range(size)})
    slopes = [rng.randint(-3, 3)]
    for _ in xs:
        step = rng.choice([-2, -1, 1, 2])
        slopes.append(slopes[-1] + step)
    return PLFunction.from_slopes(xs, slopes, _lattice(rng, 4 * denominator, denominator), window)


def random_entire(rng: random.Random, size: int = 4, denominator: int = 1, window=None) -> PLFunction:
    slopes = rng.sample(range(0, 2 * size + 1), size)
    mons = [(s, _lattice(rng, 4 * denominator, denominator)) for s in slopes]
    return PLFunction.from_monomials(mons, window)


def random_curve(seed: int, n: int = 1, size: int = 3, denominator: int = 1, window=None) -> TropCurve:
    """Reduced random curve with ``n + 1`` entire components."""
    rng = random.Random(seed)
    for _ in range(1000):
        comps = [random_entire(rng, size, denominator, window) for _ in range(n + 1)]
        if reduced_check(comps) is True:
            return TropCurve(comps)
    raise DomainError("could not draw a reduced curve")  # pragma: no cover


def random_poly(seed: int, n: int = 1, d: int = 1, denominator: int = 1, density: float = 0.6) -> TropPolynomial:
    """Random homogeneous polynomial in ``n + 1`` variables of degree ``d``.

    Each monomial is kept with probability ``density``; ``density=1`` gives
    full support.
    """
    rng = random.Random(seed)
    basis = monomial_basis(n, d)
    chosen = [I for I in basis if rng.random() < density] or [rng.choice(basis)]
    return TropPolynomial(n + 1, d, {I: _lattice(rng, 3 * denominator, denominator) for I in chosen})


def gen_example(spec: ExampleSpec) -> str:
    """Declaration text for ``spec``, ready to be parsed back."""
    doc = InputDocument()

    def add(name, kind, obj, table):
        table[name] = obj
        doc.kinds[name] = kind
        doc.order.append(name)

    if spec.family == "e_alpha":
        add(spec.name, "pl", e_alpha(spec.alpha, spec.window), doc.functions)
    elif spec.family == "e_beta":
        add(spec.name, "pl", e_beta(spec.beta, spec.window), doc.functions)
    elif spec.family == "rational":
        add(spec.name, "pl", random_rational(spec.seed, spec.size, spec.denominator, spec.window), doc.functions)
    elif spec.family == "random_curve":
        curve = random_curve(spec.seed, spec.n, spec.size, spec.denominator, spec.window)
        refs = []
        for j, g in enumerate(curve.components):
            refs.append(f"{spec.name}{j}")
            add(refs[-1], "entire", g, doc.functions)
        add(spec.name, "curve", curve, doc.curves)
        doc.curve_refs[spec.name] = tuple(refs)
        for k in range(spec.q):
            add(f"P{k}", "poly", random_poly(spec.seed * 1000 + k, spec.n, spec.d, spec.denominator), doc.polys)
        polys = ",".join(f"P{k}" for k in range(spec.q))
        add("I", "instance", {"curve": spec.name, "polys": polys, "c": "1", "grid": "1:1200:10"}, doc.instances)
    else:
        add(spec.name, "poly", random_poly(spec.seed, spec.n, spec.d, spec.denominator), doc.polys)
    return emit(doc)
