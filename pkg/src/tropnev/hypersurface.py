"""Homogeneous tropical polynomials, their hypersurfaces, and curve composition."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Mapping, Tuple

from .errors import DegenerateError, DomainError
from .nevanlinna import cartan_T, counting_N
from .plfun import PLFunction, pl_max_many, pl_neg, pl_scale, pl_sum
from .projective import TropCurve, curve_norm
from .semiring import BOTTOM, to_rational, to_value

__all__ = [
    "TropPolynomial",
    "Hypersurface",
    "monomial_basis",
    "poly_eval",
    "maximizing_terms",
    "membership",
    "compose",
    "poly_power",
    "coef_norm",
    "weil",
    "proximity_hyp",
    "fmt_constant",
    "fmt_residual",
    "curve_in_hypersurface",
    "tp1_polynomial",
    "tp1_value_polynomial",
    "PLUS_INF",
]

PLUS_INF = math.inf


def _exp(e):
    e = to_rational(e)
    if e < 0:
        raise DomainError("exponents must be nonnegative")
    return e.numerator if e.denominator == 1 else e


class TropPolynomial:
    """``max_I (c_I + <I, x>)`` over multi-indices of a common total degree.

    Bottom coefficients are dropped on construction.  Exponent vectors may
    be rational (produced by :func:`poly_power`); such polynomials compose
    fine but are rejected by the corner-locus operations.
    """

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree, terms: Mapping):
        nvars = int(nvars)
        degree = _exp(degree)
        if nvars < 2:
            raise DomainError("need at least two homogeneous variables")
        if degree <= 0:
            raise DomainError("degree must be positive")
        clean: Dict[Tuple, Fraction] = {}
        for idx, c in dict(terms).items():
            idx = tuple(_exp(i) for i in idx)
            if len(idx) != nvars:
                raise DomainError(f"multi-index {idx} has wrong length")
            if sum(idx) != degree:
                raise DomainError(f"multi-index {idx} does not have degree {degree}")
            c = to_value(c)
            if c is BOTTOM:
                continue
            if idx in clean:
                c = max(c, clean[idx])
            clean[idx] = c
        if not clean:
            raise DomainError("polynomial needs at least one real coefficient")
        self.nvars = nvars
        self.degree = degree
        self.terms = dict(sorted(clean.items(), reverse=True))

    @property
    def n(self) -> int:
        return self.nvars - 1

    @property
    def integral(self) -> bool:
        return all(isinstance(i, int) for idx in self.terms for i in idx)

    def __eq__(self, other):
        return (
            isinstance(other, TropPolynomial)
            and self.nvars == other.nvars
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.degree, tuple(self.terms.items())))

    def __repr__(self):
        body = " ⊕ ".join(f"{c}⊙x^{list(map(str, idx))}" for idx, c in self.terms.items())
        return f"TropPolynomial(deg={self.degree}: {body})"


class Hypersurface:
    """Corner locus of a homogeneous tropical polynomial."""

    __slots__ = ("polynomial",)

    def __init__(self, polynomial: TropPolynomial):
        if not isinstance(polynomial, TropPolynomial):
            raise TypeError("expected a TropPolynomial")
        self.polynomial = polynomial

    @property
    def degree(self):
        return self.polynomial.degree

    def __repr__(self):
        return f"Hypersurface({self.polynomial!r})"


def _poly(v) -> TropPolynomial:
    return v.polynomial if isinstance(v, Hypersurface) else v


def monomial_basis(n: int, d: int) -> List[Tuple[int, ...]]:
    """Multi-indices of length ``n+1`` and total degree ``d``, lex-descending."""
    if n < 1 or d < 1:
        raise DomainError("need n >= 1 and d >= 1")

    def rec(k, left):
        if k == 0:
            yield (left,)
            return
        for i in range(left, -1, -1):
            for rest in rec(k - 1, left - i):
                yield (i,) + rest

    return list(rec(n, d))


def _term_values(p: TropPolynomial, x):
    coords = [to_value(a) for a in x]
    if len(coords) != p.nvars:
        raise DomainError(f"point has {len(coords)} coordinates, polynomial has {p.nvars} variables")
    out = []
    for idx, c in p.terms.items():
        val = c
        for i, a in zip(idx, coords):
            if i == 0:
                continue
            if a is BOTTOM:
                val = BOTTOM
                break
            val += i * a
        out.append((idx, val))
    return out


def poly_eval(p, x):
    vals = [v for _, v in _term_values(_poly(p), x) if v is not BOTTOM]
    return max(vals) if vals else BOTTOM


def maximizing_terms(p, x) -> List[Tuple]:
    tv = _term_values(_poly(p), x)
    live = [v for _, v in tv if v is not BOTTOM]
    if not live:
        return [idx for idx, _ in tv]
    top = max(live)
    return [idx for idx, v in tv if v is not BOTTOM and v == top]


def membership(v, x) -> bool:
    """Whether the maximum at ``x`` is attained by two or more monomials."""
    p = _poly(v)
    if not p.integral:
        raise DomainError("corner locus needs integer exponents")
    return len(maximizing_terms(p, x)) >= 2


def _check_curve(p: TropPolynomial, f: TropCurve):
    if len(f.components) != p.nvars:
        raise DomainError(f"curve has {len(f.components)} components, polynomial has {p.nvars} variables")


def compose(p, f: TropCurve) -> PLFunction:
    """``P o f`` as an entire PL function."""
    p = _poly(p)
    _check_curve(p, f)
    comps = f.components
    w = f.window
    terms = []
    for idx, c in p.terms.items():
        parts = [PLFunction.constant(c, w)]
        parts += [pl_scale(g, i) for i, g in zip(idx, comps) if i != 0]
        terms.append(pl_sum(parts))
    return pl_max_many(terms)


def poly_power(p, d_target) -> TropPolynomial:
    """``P^(d_target / deg P)``: exponents and coefficients scaled."""
    p = _poly(p)
    d_target = _exp(d_target)
    k = to_rational(d_target) / to_rational(p.degree)
    terms = {tuple(k * i for i in idx): k * c for idx, c in p.terms.items()}
    return TropPolynomial(p.nvars, d_target, terms)


def coef_norm(p) -> Fraction:
    """Largest real coefficient."""
    return max(_poly(p).terms.values())


def weil(v, f: TropCurve, x) -> Fraction:
    p = _poly(v)
    x = to_rational(x)
    d = p.degree
    pf = poly_eval(p, f(x))
    return d * curve_norm(f, x) + d * coef_norm(p) - pf


def proximity_hyp(v, f: TropCurve, r) -> Fraction:
    r = to_rational(r)
    if r <= 0:
        raise DomainError("radius must be positive")
    return (weil(v, f, r) + weil(v, f, -r)) / 2


def fmt_constant(v, f: TropCurve) -> Fraction:
    """The value the First Main Theorem residual takes at every radius."""
    p = _poly(v)
    zero = Fraction(0)
    return p.degree * curve_norm(f, zero) + p.degree * coef_norm(p) - poly_eval(p, f(zero))


def curve_in_hypersurface(v, f: TropCurve) -> bool:
    """Decide exactly whether every point ``f(x)`` lies in the corner locus.

    On each open cell between consecutive knots of the components and of
    ``P o f`` all terms are affine and the maximizing set is constant, so one
    probe per cell decides the question.
    """
    p = _poly(v)
    _check_curve(p, f)
    knots = set(compose(p, f).breakpoints)
    for g in f.components:
        knots.update(g.breakpoints)
    w = f.window
    if w is not None:
        knots = {x for x in knots if w[0] < x < w[1]}
        knots.update(w)
    ks = sorted(knots)
    if not ks:
        probes = [Fraction(0)]
    else:
        probes = [(a + b) / 2 for a, b in zip(ks, ks[1:])]
        if w is None:
            probes += [ks[0] - 1, ks[-1] + 1]
    return all(membership(p, f(x)) for x in probes)


def fmt_residual(v, f: TropCurve, r) -> Fraction:
    """``m_f(r, V) + N(r, 1/(P o f)) - d T_f(r)``; constant in ``r``."""
    p = _poly(v)
    if curve_in_hypersurface(p, f):
        raise DegenerateError("curve lies inside the hypersurface")
    pf = compose(p, f)
    return proximity_hyp(p, f, r) + counting_N(pl_neg(pf), r) - p.degree * cartan_T(f, r)


def tp1_polynomial(a1, a0) -> TropPolynomial:
    """Linear form ``a0 x_0 ⊕ a1 x_1`` attached to ``[a1 : a0]``."""
    return TropPolynomial(2, 1, {(1, 0): to_value(a0), (0, 1): to_value(a1)})


def tp1_value_polynomial(a) -> TropPolynomial:
    """Linear form of a value of TP^1: a rational, ``BOTTOM`` or ``PLUS_INF``.

    For a finite value the composition with ``[f_0 : f_1]`` is
    ``f_0 + max(a, f_1 - f_0)``.
    """
    if a is BOTTOM or (isinstance(a, str) and a.strip() == "-inf"):
        return tp1_polynomial(0, BOTTOM)
    if a == PLUS_INF or (isinstance(a, str) and a.strip() in ("+inf", "inf")):
        return tp1_polynomial(BOTTOM, 0)
    return tp1_polynomial(0, to_rational(a))
