"""Tropical projective space and tropical holomorphic curves."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

from .errors import DomainError
from .plfun import PLFunction, critical_points, is_entire, pl_max_many, split_entire
from .semiring import BOTTOM, to_rational, to_value

__all__ = [
    "ProjectivePoint",
    "TropCurve",
    "normalize",
    "curve_norm",
    "norm_function",
    "reduced_check",
    "curve_from_meromorphic",
]


class ProjectivePoint(tuple):
    """Canonical representative of a point of TP^n: largest coordinate 0."""

    def __new__(cls, coords):
        return super().__new__(cls, coords)

    @property
    def n(self) -> int:
        return len(self) - 1


def normalize(p) -> ProjectivePoint:
    coords = [to_value(a) for a in p]
    live = [a for a in coords if a is not BOTTOM]
    if not live:
        raise DomainError("all coordinates are bottom")
    top = max(live)
    return ProjectivePoint(BOTTOM if a is BOTTOM else a - top for a in coords)


def reduced_check(components: Sequence[PLFunction]):
    """``True`` if no point is a root of every component, else that point."""
    for f in components:
        if not is_entire(f):
            raise DomainError("curve components must be entire (convex)")
    common = None
    for f in components:
        roots = {cp.location for cp in critical_points(f)}
        common = roots if common is None else common & roots
        if not common:
            return True
    return min(common)


class TropCurve:
    """Reduced representation ``[f_0 : ... : f_n]`` by convex PL functions."""

    __slots__ = ("components",)

    def __init__(self, components, check: bool = True):
        comps: Tuple[PLFunction, ...] = tuple(components)
        if len(comps) < 2:
            raise DomainError("a curve needs at least two components")
        windows = {f.window for f in comps}
        if len(windows) != 1:
            raise DomainError("curve components must share one window")
        if check:
            bad = reduced_check(comps)
            if bad is not True:
                raise DomainError(f"components have a common root at {bad}")
        self.components = comps

    @property
    def n(self) -> int:
        return len(self.components) - 1

    @property
    def window(self):
        return self.components[0].window

    def __call__(self, x):
        return tuple(f(x) for f in self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other):
        return isinstance(other, TropCurve) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"TropCurve({list(self.components)!r})"


def curve_norm(f: TropCurve, x) -> Fraction:
    x = to_rational(x)
    return max(c(x) for c in f.components)


def norm_function(f: TropCurve) -> PLFunction:
    """``x -> ||f(x)||`` as a PL function."""
    return pl_max_many(f.components)


def curve_from_meromorphic(f: PLFunction) -> TropCurve:
    """The TP^1 curve ``[g : h]`` with ``f = h - g`` from :func:`split_entire`."""
    h, g = split_entire(f)
    return TropCurve([g, h])
