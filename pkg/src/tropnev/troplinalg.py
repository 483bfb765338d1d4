"""Tropical matrices, the tropical determinant and the tropical Casoratian.

The determinant ``max_pi sum_i a[i][pi(i)]`` is a maximum-weight assignment
problem.  It is solved exactly with the Hungarian method on rational costs,
after a bipartite-matching pass decides whether any permutation avoids the
bottom entries at all.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import CapExceededError, DomainError
from .plfun import PLFunction, pl_max_many, pl_shift, pl_sum
from .semiring import BOTTOM, oplus, otimes, to_rational, to_value

__all__ = [
    "TropMatrix",
    "mat_oplus",
    "mat_otimes",
    "trop_det",
    "optimal_assignment",
    "is_regular",
    "has_live_permutation",
    "casoratian",
    "casoratian_at",
    "casoratian_matrix",
    "DEFAULT_CASORATIAN_CAP",
]

DEFAULT_CASORATIAN_CAP = 6


class TropMatrix:
    """Square matrix of tropical values (rationals or ``BOTTOM``)."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(to_value(a) for a in row) for row in rows)
        if not rows:
            raise DomainError("matrix must have at least one row")
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise DomainError("matrix must be square")
        self.rows: Tuple[Tuple, ...] = rows

    @classmethod
    def identity(cls, n):
        return cls([[Fraction(0) if i == j else BOTTOM for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, TropMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"TropMatrix({[[str(a) for a in row] for row in self.rows]})"


def _check_dims(a: TropMatrix, b: TropMatrix):
    if a.dim != b.dim:
        raise DomainError(f"dimension mismatch: {a.dim} vs {b.dim}")


def mat_oplus(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    _check_dims(a, b)
    return TropMatrix([[oplus(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a.rows, b.rows)])


def mat_otimes(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    _check_dims(a, b)
    n = a.dim
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = BOTTOM
            for k in range(n):
                acc = oplus(acc, otimes(a.rows[i][k], b.rows[k][j]))
            row.append(acc)
        out.append(row)
    return TropMatrix(out)


def _as_rows(a) -> List[List]:
    if isinstance(a, TropMatrix):
        return [list(r) for r in a.rows]
    return [list(r) for r in TropMatrix(a).rows]


def _perfect_matching_exists(rows) -> bool:
    n = len(rows)
    match_col = [-1] * n

    def augment(i, seen):
        for j in range(n):
            if rows[i][j] is not BOTTOM and not seen[j]:
                seen[j] = True
                if match_col[j] < 0 or augment(match_col[j], seen):
                    match_col[j] = i
                    return True
        return False

    return all(augment(i, [False] * n) for i in range(n))


def _hungarian_min(cost) -> List[int]:
    """Min-cost perfect assignment; returns ``col[i]`` for each row ``i``."""
    n = len(cost)
    inf = float("inf")
    u = [Fraction(0)] * (n + 1)
    v = [Fraction(0)] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = inf
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    col = [0] * n
    for j in range(1, n + 1):
        if p[j]:
            col[p[j] - 1] = j - 1
    return col


def optimal_assignment(a) -> Optional[List[int]]:
    """A maximizing permutation for the tropical determinant, or ``None``."""
    rows = _as_rows(a)
    if not _perfect_matching_exists(rows):
        return None
    live = [x for row in rows for x in row if x is not BOTTOM]
    big = 2 * sum(abs(x) for x in live) + 1
    cost = [[big if x is BOTTOM else -x for x in row] for row in rows]
    return _hungarian_min(cost)


def trop_det(a):
    rows = _as_rows(a)
    perm = optimal_assignment(rows)
    if perm is None:
        return BOTTOM
    return sum(rows[i][perm[i]] for i in range(len(rows)))


def is_regular(a) -> bool:
    """Row criterion: every row has an entry other than bottom."""
    return all(any(x is not BOTTOM for x in row) for row in _as_rows(a))


def has_live_permutation(a) -> bool:
    """Determinant criterion: some permutation avoids every bottom entry."""
    return _perfect_matching_exists(_as_rows(a))


def casoratian_matrix(funcs: Sequence[PLFunction], c, x) -> List[List[Fraction]]:
    c, x = to_rational(c), to_rational(x)
    n = len(funcs)
    return [[f(x + k * c) for k in range(n)] for f in funcs]


def casoratian_at(funcs: Sequence[PLFunction], c, x) -> Fraction:
    """Casoratian at one point, via assignment on ``f_j(x + k c)``."""
    c = to_rational(c)
    if c == 0:
        raise DomainError("shift c must be nonzero")
    if not funcs:
        raise DomainError("need at least one function")
    return trop_det(casoratian_matrix(funcs, c, x))


def casoratian(funcs: Sequence[PLFunction], c, cap: int = DEFAULT_CASORATIAN_CAP) -> PLFunction:
    """Symbolic Casoratian as a PL function, by enumerating permutations."""
    c = to_rational(c)
    if c == 0:
        raise DomainError("shift c must be nonzero")
    funcs = list(funcs)
    n = len(funcs)
    if n == 0:
        raise DomainError("need at least one function")
    if n > cap:
        raise CapExceededError(f"{n} functions exceed the symbolic cap {cap}; use casoratian_at")
    shifted = [[pl_shift(f, k * c) for k in range(n)] for f in funcs]
    terms = [pl_sum(shifted[j][p[j]] for j in range(n)) for p in itertools.permutations(range(n))]
    return pl_max_many(terms)
