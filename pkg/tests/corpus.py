"""Seeded instance corpora shared by the module tests and the acceptance run."""

from __future__ import annotations

import functools
import math
import random
from fractions import Fraction

from tropnev import (
    BOTTOM,
    DegenerateError,
    PLFunction,
    TropCurve,
    build_instance,
    curve_in_hypersurface,
    infimum,
    supremum,
)
from tropnev.generators import random_curve, random_poly, random_rational

GRID = tuple(Fraction(k) for k in range(1, 1201, 10))


def rational(seed):
    rng = random.Random(seed)
    return random_rational(seed, size=rng.randint(1, 6), denominator=rng.choice([1, 2, 3]))


@functools.lru_cache(maxsize=None)
def rational_corpus(count=1000):
    return tuple(rational(s) for s in range(count))


@functools.lru_cache(maxsize=None)
def fmt_corpus(count=200):
    """(curve, polynomial) pairs with ``n <= 3`` and ``d <= 3``."""
    out = []
    seed = 0
    while len(out) < count:
        rng = random.Random(10_000 + seed)
        n = rng.randint(1, 3)
        d = rng.randint(1, 3)
        curve = random_curve(10_000 + seed, n=n, size=rng.randint(1, 4), denominator=rng.choice([1, 2]))
        p = random_poly(20_000 + seed, n=n, d=d, denominator=rng.choice([1, 2]))
        seed += 1
        if curve_in_hypersurface(p, curve):
            continue
        out.append((curve, p))
    return tuple(out)


def _smt(seed, n, degrees, density, grid=GRID):
    curve = random_curve(seed, n=n, size=3)
    polys = [random_poly(seed * 100 + k, n=n, d=dj, density=density) for k, dj in enumerate(degrees)]
    try:
        return build_instance(curve, polys, 1, grid)
    except DegenerateError:
        return None


@functools.lru_cache(maxsize=None)
def smt_corpus():
    """At least 50 instances: 30 with every ``d_j = 1`` and 20 with mixed degrees."""
    shapes_d1 = [(1, [1] * 3), (1, [1] * 4), (1, [1] * 5), (2, [1] * 4), (2, [1] * 5)]
    shapes_mixed = [(1, [1, 2, 1, 2]), (1, [2, 1, 1, 2, 1]), (1, [1, 2, 2, 2]), (2, [1, 1, 2, 1, 1, 1, 1])]
    out = []
    for shapes, want in ((shapes_d1, 30), (shapes_mixed, 20)):
        seed, got = 0, 0
        while got < want:
            n, degs = shapes[seed % len(shapes)]
            density = 1 if seed % 2 == 0 else 0.6
            inst = _smt(seed, n, degs, density)
            seed += 1
            if inst is not None and inst.q >= inst.M + 1:
                out.append(inst)
                got += 1
    return tuple(out)


def tp1_value_sets(count=20, strict=False):
    """Nonconstant rational f with distinct finite values none of which absorbs f.

    With ``strict`` no value is absorbed by f either, so every value lies
    strictly between the infimum and the supremum of f.
    """
    out = []
    seed = 0
    while len(out) < count:
        rng = random.Random(50_000 + seed)
        f = random_rational(50_000 + seed, size=rng.randint(2, 5))
        seed += 1
        if f.is_affine() and f.left_slope == 0:
            continue
        q = rng.randint(2, 4)
        vals = sorted({Fraction(rng.randint(-6, 6), rng.choice([1, 2])) for _ in range(q)})
        if len(vals) < 2:
            continue
        # a value absorbs f exactly when it is at least sup f
        if any(a >= supremum(f) for a in vals):
            continue
        if strict and any(a <= infimum(f) for a in vals):
            continue
        out.append((f, vals))
    return out


def absorption_cases(kind, count=100):
    """Cases where ``f max a == f`` (kind "absorbed") or ``f max a == a`` (kind "absorbing")."""
    out = []
    seed = 0
    while len(out) < count:
        rng = random.Random(70_000 + seed)
        f = random_rational(70_000 + seed, size=rng.randint(1, 5), denominator=rng.choice([1, 2]))
        seed += 1
        if kind == "absorbed":
            lo = infimum(f)
            if lo is BOTTOM:
                continue
            out.append((f, lo - rng.randint(0, 3)))
        else:
            hi = supremum(f)
            if hi == math.inf:
                continue
            out.append((f, hi + rng.randint(0, 3)))
    return out


def constant_curve():
    return TropCurve([PLFunction.constant(0), PLFunction.constant(1)])


@functools.lru_cache(maxsize=None)
def chain_corpus(count=20):
    """Full-support, all-linear instances on the whole line with ``lam = 0``."""
    from tropnev import lambda_ddg

    shapes = [(1, 4), (1, 5), (2, 5)]
    out = []
    seed = 0
    while len(out) < count:
        n, q = shapes[seed % len(shapes)]
        inst = _smt(900 + seed, n, [1] * q, 1)
        seed += 1
        if inst is None or inst.q < inst.M + 1 or lambda_ddg(inst) != 0:
            continue
        out.append(inst)
    return tuple(out)
