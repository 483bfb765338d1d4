"""Exact continuous piecewise-linear functions of one real variable.

A :class:`PLFunction` is stored by its breakpoints ``x_1 < ... < x_m``, the
values at those breakpoints, and the slopes ``s_0, ..., s_m`` of the pieces
(``s_0`` on the left tail, ``s_m`` on the right tail).  Every constructor
returns the canonical form: no breakpoint has equal slopes on both sides, and
when a validity window ``[lo, hi]`` is attached every breakpoint lies strictly
inside it, with the tail slopes equal to the slopes of the pieces touching
the window edges.  Two functions are equal iff their canonical data agree.

Convex functions model tropical entire functions; general ones model tropical
meromorphic functions.  Roots are convex corners (positive slope jump) and
poles are concave corners (negative jump).
"""

from __future__ import annotations

import bisect
import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple

from .errors import DomainError, WindowError
from .semiring import BOTTOM, to_rational

__all__ = [
    "PLFunction",
    "CriticalPoint",
    "evaluate",
    "pl_max",
    "pl_max_many",
    "pl_min",
    "pl_add",
    "pl_sum",
    "pl_neg",
    "pl_sub",
    "pl_scale",
    "pl_shift",
    "pl_restrict",
    "critical_points",
    "is_entire",
    "split_entire",
    "pl_equal",
    "plus_part",
    "infimum",
    "supremum",
    "intersect_windows",
]

Window = Optional[Tuple[Fraction, Fraction]]


class CriticalPoint(NamedTuple):
    """A breakpoint and its slope jump (right slope minus left slope)."""

    location: Fraction
    jump: Fraction

    @property
    def is_root(self) -> bool:
        return self.jump > 0

    @property
    def is_pole(self) -> bool:
        return self.jump < 0


def _window(w) -> Window:
    if w is None:
        return None
    lo, hi = to_rational(w[0]), to_rational(w[1])
    if not lo < hi:
        raise WindowError(f"empty or degenerate window [{lo}, {hi}]")
    return (lo, hi)


def intersect_windows(*windows: Window) -> Window:
    """Intersection of optional windows; ``None`` means all of the real line."""
    lo = hi = None
    for w in windows:
        if w is None:
            continue
        lo = w[0] if lo is None else max(lo, w[0])
        hi = w[1] if hi is None else min(hi, w[1])
    if lo is None:
        return None
    if not lo < hi:
        raise WindowError(f"window intersection [{lo}, {hi}] is empty")
    return (lo, hi)


class PLFunction:
    """Immutable exact piecewise-linear function in canonical form."""

    __slots__ = ("_xs", "_ys", "_slopes", "_window", "_hash")

    def __init__(self, xs, ys, left_slope, right_slope, window=None):
        # Canonicalizing constructor.  ``xs``/``ys`` describe knots of the
        # extension to the whole line; knots need not be canonical.
        xs = [to_rational(x) for x in xs]
        ys = [to_rational(y) for y in ys]
        if len(xs) != len(ys):
            raise DomainError("knot abscissae and values differ in length")
        for a, b in zip(xs, xs[1:]):
            if not a < b:
                raise DomainError("breakpoints must be strictly increasing")
        sl, sr = to_rational(left_slope), to_rational(right_slope)
        window = _window(window)
        if window is not None:
            xs, ys, sl, sr = _clip(xs, ys, sl, sr, window)
        xs, ys, slopes = _merge(xs, ys, sl, sr)
        self._xs: Tuple[Fraction, ...] = tuple(xs)
        self._ys: Tuple[Fraction, ...] = tuple(ys)
        self._slopes: Tuple[Fraction, ...] = tuple(slopes)
        self._window: Window = window
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_points(cls, points, left_slope, right_slope, window=None) -> "PLFunction":
        """Interpolate ``(x, y)`` points, extended by the given tail slopes."""
        pts = sorted((to_rational(x), to_rational(y)) for x, y in points)
        if not pts:
            raise DomainError("from_points needs at least one point")
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return cls(xs, ys, left_slope, right_slope, window)

    @classmethod
    def from_slopes(cls, breakpoints, slopes, anchor_value, window=None) -> "PLFunction":
        """Build from the field form: breakpoints, slopes and the anchor value.

        The anchor is the value at the first breakpoint, or at 0 when there
        are no breakpoints.
        """
        bps = [to_rational(b) for b in breakpoints]
        sl = [to_rational(s) for s in slopes]
        if len(sl) != len(bps) + 1:
            raise DomainError("need exactly one more slope than breakpoints")
        y0 = to_rational(anchor_value)
        if not bps:
            return cls.affine(sl[0], y0, window)
        ys = [y0]
        for i in range(1, len(bps)):
            ys.append(ys[-1] + sl[i] * (bps[i] - bps[i - 1]))
        return cls(bps, ys, sl[0], sl[-1], window)

    @classmethod
    def affine(cls, slope, intercept, window=None) -> "PLFunction":
        return cls([0], [intercept], slope, slope, window)

    @classmethod
    def constant(cls, value, window=None) -> "PLFunction":
        return cls.affine(0, value, window)

    @classmethod
    def from_monomials(cls, monomials, window=None) -> "PLFunction":
        """``max_k (s_k x + c_k)`` for a finite list of ``(s_k, c_k)`` pairs."""
        lines = [(to_rational(s), to_rational(c)) for s, c in monomials]
        if not lines:
            raise DomainError("need at least one monomial")
        env = _upper_envelope(lines)
        if len(env) == 1:
            return cls.affine(env[0][0], env[0][1], window)
        xs = [_cross(env[i], env[i + 1]) for i in range(len(env) - 1)]
        ys = [env[i][0] * x + env[i][1] for i, x in enumerate(xs)]
        return cls(xs, ys, env[0][0], env[-1][0], window)

    # -- field access -------------------------------------------------------

    @property
    def breakpoints(self) -> Tuple[Fraction, ...]:
        return self._xs

    @property
    def values(self) -> Tuple[Fraction, ...]:
        """Values at the breakpoints."""
        return self._ys if self._xs else ()

    @property
    def slopes(self) -> Tuple[Fraction, ...]:
        return self._slopes

    @property
    def window(self) -> Window:
        return self._window

    @property
    def reference(self) -> Fraction:
        return self._xs[0] if self._xs else Fraction(0)

    @property
    def anchor_value(self) -> Fraction:
        return self._ys[0]

    @property
    def left_slope(self) -> Fraction:
        return self._slopes[0]

    @property
    def right_slope(self) -> Fraction:
        return self._slopes[-1]

    @property
    def _b(self):
        # knot-free functions keep their value at 0 in _ys
        return self._ys[0]

    def is_affine(self) -> bool:
        return not self._xs

    def key(self):
        """Canonical field tuple; equality of keys is equality of functions."""
        return (self._xs, self._ys, self._slopes, self._window)

    def __eq__(self, other):
        if not isinstance(other, PLFunction):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        if not self._xs:
            body = f"affine slope={self._slopes[0]} value0={self._b}"
        else:
            pts = ", ".join(f"({x}, {y})" for x, y in zip(self._xs, self._ys))
            body = f"left_slope={self._slopes[0]} points=[{pts}] right_slope={self._slopes[-1]}"
        if self._window is not None:
            body += f" window=[{self._window[0]}, {self._window[1]}]"
        return f"PLFunction({body})"

    # -- evaluation ---------------------------------------------------------

    def in_window(self, x) -> bool:
        w = self._window
        return w is None or w[0] <= x <= w[1]

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    def value_ext(self, x) -> Fraction:
        """Value of the affine-tail extension, ignoring the window."""
        xs = self._xs
        if not xs:
            return self._slopes[0] * x + self._b
        i = bisect.bisect_right(xs, x)
        if i == 0:
            return self._ys[0] + self._slopes[0] * (x - xs[0])
        return self._ys[i - 1] + self._slopes[i] * (x - xs[i - 1])

    def piece(self, i) -> Tuple[Fraction, Fraction]:
        """``(slope, intercept)`` of the affine piece with index ``i`` (0..m)."""
        s = self._slopes[i]
        if not self._xs:
            return s, self._b
        j = max(i - 1, 0)
        return s, self._ys[j] - s * self._xs[j]

    def pieces(self):
        return [self.piece(i) for i in range(len(self._slopes))]

    # -- operator sugar -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, PLFunction):
            return pl_add(self, other)
        return pl_add(self, PLFunction.constant(other))

    __radd__ = __add__

    def __neg__(self):
        return pl_neg(self)

    def __sub__(self, other):
        if isinstance(other, PLFunction):
            return pl_sub(self, other)
        return pl_add(self, PLFunction.constant(-to_rational(other)))

    def __rsub__(self, other):
        return pl_add(pl_neg(self), PLFunction.constant(other))

    def __or__(self, other):
        if not isinstance(other, PLFunction):
            other = PLFunction.constant(other)
        return pl_max(self, other)

    __ror__ = __or__

    def __mul__(self, s):
        return pl_scale(self, s)

    __rmul__ = __mul__


def _merge(xs, ys, sl, sr):
    """Drop zero-jump knots; return (xs, ys, slopes).  Affine keeps ys=[b]."""
    if not xs:
        raise DomainError("internal: need at least one knot")
    slopes = [sl]
    for i in range(1, len(xs)):
        slopes.append((ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]))
    slopes.append(sr)
    kx, ky, ks = [], [], [slopes[0]]
    for i, x in enumerate(xs):
        if slopes[i + 1] != ks[-1]:
            kx.append(x)
            ky.append(ys[i])
            ks.append(slopes[i + 1])
    if not kx:
        s = ks[0]
        return [], [ys[0] - s * xs[0]], [s]
    return kx, ky, ks


def _clip(xs, ys, sl, sr, window):
    lo, hi = window

    def ext(x):
        i = bisect.bisect_right(xs, x)
        if i == 0:
            return ys[0] + sl * (x - xs[0])
        if i == len(xs):
            return ys[-1] + sr * (x - xs[-1])
        return ys[i - 1] + (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]) * (x - xs[i - 1])

    inner = [(x, y) for x, y in zip(xs, ys) if lo < x < hi]
    ylo, yhi = ext(lo), ext(hi)
    if inner:
        new_sl = (inner[0][1] - ylo) / (inner[0][0] - lo)
        new_sr = (yhi - inner[-1][1]) / (hi - inner[-1][0])
        return [p[0] for p in inner], [p[1] for p in inner], new_sl, new_sr
    s = (yhi - ylo) / (hi - lo)
    return [lo], [ylo], s, s


def _upper_envelope(lines):
    """Lines (slope, intercept) on the upper envelope, by increasing slope."""
    best = {}
    for s, c in lines:
        if s not in best or c > best[s]:
            best[s] = c
    hull = []
    for s in sorted(best):
        ln = (s, best[s])
        while len(hull) >= 2 and _cross(hull[-2], ln) <= _cross(hull[-2], hull[-1]):
            hull.pop()
        hull.append(ln)
    return hull


def _cross(l1, l2):
    return (l2[1] - l1[1]) / (l1[0] - l2[0])


def evaluate(f: PLFunction, x) -> Fraction:
    x = to_rational(x)
    if not f.in_window(x):
        raise WindowError(f"x = {x} outside window [{f.window[0]}, {f.window[1]}]")
    return f.value_ext(x)


def pl_max_many(fs: Sequence[PLFunction]) -> PLFunction:
    """Pointwise maximum of several functions, computed cell by cell."""
    fs = list(fs)
    if not fs:
        raise DomainError("pl_max_many needs at least one function")
    if len(fs) == 1:
        return fs[0]
    window = intersect_windows(*(f.window for f in fs))
    knots = sorted(set().union(*(f.breakpoints for f in fs)))
    if window is not None:
        knots = [x for x in knots if window[0] < x < window[1]]
    # cells between consecutive knots, with open tails
    bounds = [None] + knots + [None]
    points = set(knots)
    left_lines = right_lines = None
    for lo, hi in zip(bounds, bounds[1:]):
        probe = _probe(lo, hi)
        lines = [_line_at(f, probe) for f in fs]
        env = _upper_envelope(lines)
        for a, b in zip(env, env[1:]):
            x = _cross(a, b)
            if (lo is None or x > lo) and (hi is None or x < hi):
                points.add(x)
        if lo is None:
            left_lines = env
        if hi is None:
            right_lines = env
    sl = left_lines[0][0]
    sr = right_lines[-1][0]
    if not points:
        s, c = left_lines[0]
        return PLFunction.affine(s, c, window)
    xs = sorted(points)
    ys = [max(f.value_ext(x) for f in fs) for x in xs]
    return PLFunction(xs, ys, sl, sr, window)


def _probe(lo, hi):
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    return (lo + hi) / 2


def _line_at(f: PLFunction, x):
    i = bisect.bisect_right(f.breakpoints, x)
    return f.piece(i)


def pl_max(f: PLFunction, g: PLFunction) -> PLFunction:
    return pl_max_many([f, g])


def pl_min(f: PLFunction, g: PLFunction) -> PLFunction:
    return pl_neg(pl_max(pl_neg(f), pl_neg(g)))


def pl_sum(fs: Iterable[PLFunction]) -> PLFunction:
    """Pointwise sum of several functions in one pass."""
    fs = list(fs)
    if not fs:
        raise DomainError("pl_sum needs at least one function")
    if len(fs) == 1:
        return fs[0]
    window = intersect_windows(*(f.window for f in fs))
    knots = sorted(set().union(*(f.breakpoints for f in fs)))
    sl = sum(f.left_slope for f in fs)
    sr = sum(f.right_slope for f in fs)
    if not knots:
        return PLFunction.affine(sr, sum(f.value_ext(0) for f in fs), window)
    ys = [sum(f.value_ext(x) for f in fs) for x in knots]
    return PLFunction(knots, ys, sl, sr, window)


def pl_add(f: PLFunction, g: PLFunction) -> PLFunction:
    return pl_sum([f, g])


def pl_neg(f: PLFunction) -> PLFunction:
    if f.is_affine():
        return PLFunction.affine(-f.left_slope, -f.value_ext(0), f.window)
    return PLFunction(f.breakpoints, [-y for y in f.values], -f.left_slope, -f.right_slope, f.window)


def pl_sub(f: PLFunction, g: PLFunction) -> PLFunction:
    return pl_add(f, pl_neg(g))


def pl_scale(f: PLFunction, s) -> PLFunction:
    s = to_rational(s)
    if f.is_affine():
        return PLFunction.affine(s * f.left_slope, s * f.value_ext(0), f.window)
    return PLFunction(f.breakpoints, [s * y for y in f.values], s * f.left_slope, s * f.right_slope, f.window)


def pl_shift(f: PLFunction, c) -> PLFunction:
    """The function ``x -> f(x + c)``; the window moves by ``-c``."""
    c = to_rational(c)
    w = None if f.window is None else (f.window[0] - c, f.window[1] - c)
    if f.is_affine():
        s = f.left_slope
        return PLFunction.affine(s, f.value_ext(c), w)
    return PLFunction([x - c for x in f.breakpoints], f.values, f.left_slope, f.right_slope, w)


def pl_restrict(f: PLFunction, window) -> PLFunction:
    """Restrict to ``window`` (intersected with any existing window)."""
    w = intersect_windows(f.window, _window(window))
    if f.is_affine():
        return PLFunction.affine(f.left_slope, f.value_ext(0), w)
    return PLFunction(f.breakpoints, f.values, f.left_slope, f.right_slope, w)


def critical_points(f: PLFunction) -> list:
    s = f.slopes
    return [CriticalPoint(x, s[i + 1] - s[i]) for i, x in enumerate(f.breakpoints)]


def is_entire(f: PLFunction) -> bool:
    s = f.slopes
    return all(a <= b for a, b in zip(s, s[1:]))


def split_entire(f: PLFunction):
    """Write ``f = h - g`` with ``h``, ``g`` convex and without common roots.

    ``g`` has a root of multiplicity ``tau`` at every pole of ``f`` and is
    normalized by ``g(0) = 0`` and left slope 0.
    """
    poles = [(cp.location, -cp.jump) for cp in critical_points(f) if cp.jump < 0]
    if not poles:
        g = PLFunction.constant(0, f.window)
        return pl_add(f, g), g
    # g(x) = sum tau * max(x - b, 0) - g(0)
    g0 = sum(t * max(-b, Fraction(0)) for b, t in poles)
    xs = [b for b, _ in poles]
    ys = []
    for x in xs:
        ys.append(sum(t * max(x - b, Fraction(0)) for b, t in poles) - g0)
    g = PLFunction(xs, ys, 0, sum(t for _, t in poles), f.window)
    return pl_add(f, g), g


def pl_equal(f: PLFunction, g: PLFunction) -> bool:
    if f.window != g.window:
        raise WindowError("pl_equal needs identical windows")
    return f.key() == g.key()


def plus_part(f: PLFunction) -> PLFunction:
    return pl_max(f, PLFunction.constant(0))


def infimum(f: PLFunction):
    """Exact infimum over the window (or the line); ``BOTTOM`` if unbounded."""
    return _extremum(f, lower=True)


def supremum(f: PLFunction):
    """Exact supremum over the window (or the line); ``math.inf`` if unbounded."""
    return _extremum(f, lower=False)


def _extremum(f: PLFunction, lower: bool):
    pick = min if lower else max
    cands = list(f.values) if f.breakpoints else []
    sl, sr = f.left_slope, f.right_slope
    w = f.window
    if w is not None:
        cands += [f.value_ext(w[0]), f.value_ext(w[1])]
        return pick(cands)
    unbounded = (sl > 0 or sr < 0) if lower else (sl < 0 or sr > 0)
    if unbounded:
        return BOTTOM if lower else math.inf
    if not cands:
        return f.value_ext(0)
    return pick(cands)
