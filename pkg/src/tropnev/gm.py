"""Gondran-Minoux (in)dependence and representations over a basis.

Representability of ``F`` as ``max_k (a_k + f_k)`` on a fixed support is
decided exactly by residuation: the coefficientwise largest candidate is
``b_k = inf(F - f_k)``, and ``F`` is representable on the support iff that
candidate reproduces ``F``.  Two-sided dependence is searched with the
alternating method over every pair of disjoint supports; a returned
certificate is an exact proof, while a failed search is only evidence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import CapExceededError, DomainError
from .hypersurface import monomial_basis
from .plfun import PLFunction, intersect_windows, pl_equal, pl_max_many, pl_scale, pl_sum
from .projective import TropCurve
from .semiring import BOTTOM, format_value, to_value

__all__ = [
    "Basis",
    "Representation",
    "DependenceCertificate",
    "Verdict",
    "combine",
    "principal_coefficients",
    "verify_representation",
    "shortest_length",
    "ddg",
    "gm_dependent",
    "verify_certificate",
    "algebraic_lift",
    "nondegenerate",
    "DEFAULT_BASIS_CAP",
    "DEFAULT_MAX_ITER",
]

DEFAULT_BASIS_CAP = 8
DEFAULT_MAX_ITER = 64


@dataclass(frozen=True)
class Basis:
    functions: Tuple[PLFunction, ...]
    label: str = "linear"
    n: Optional[int] = None
    d: Optional[int] = None
    indices: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        if not self.functions:
            raise DomainError("basis must be nonempty")
        if self.label not in ("linear", "algebraic"):
            raise DomainError(f"unknown basis label {self.label!r}")
        if self.label == "algebraic" and (self.n is None or self.d is None or self.indices is None):
            raise DomainError("algebraic basis needs n, d and its monomial indices")

    def __len__(self):
        return len(self.functions)


@dataclass(frozen=True)
class Representation:
    coefficients: Tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(to_value(a) for a in self.coefficients))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.coefficients) if a is not BOTTOM)

    def __str__(self):
        return "(" + ",".join(format_value(a) for a in self.coefficients) + ")"


@dataclass(frozen=True)
class DependenceCertificate:
    I: Tuple[int, ...]
    J: Tuple[int, ...]
    coefficients: Representation
    verified: bool = False

    def __str__(self):
        i = ",".join(map(str, self.I))
        j = ",".join(map(str, self.J))
        return f"I={{{i}}}|J={{{j}}}|a={self.coefficients}"


@dataclass(frozen=True)
class Verdict:
    dependent: bool
    certificate: Optional[DependenceCertificate] = None
    depth: int = 0

    def __str__(self):
        if self.dependent:
            return f"dependent(cert={self.certificate})"
        return f"independent(presumed, depth={self.depth})"


def _funcs(basis) -> Tuple[PLFunction, ...]:
    return basis.functions if isinstance(basis, Basis) else tuple(basis)


def _combine_on(funcs, coeffs, support) -> PLFunction:
    return pl_max_many([funcs[k] + coeffs[k] for k in support])


def combine(basis, rep: Representation) -> PLFunction:
    funcs = _funcs(basis)
    if len(rep.coefficients) != len(funcs):
        raise DomainError("representation length does not match the basis")
    if not rep.support:
        raise DomainError("representation has empty support")
    return _combine_on(funcs, rep.coefficients, rep.support)


def _inf_gap(F: PLFunction, g: PLFunction):
    """``inf (F - g)`` without building the difference."""
    w = intersect_windows(F.window, g.window)
    if w is None:
        if F.left_slope > g.left_slope or F.right_slope < g.right_slope:
            return BOTTOM
        xs = set(F.breakpoints).union(g.breakpoints)
        if not xs:
            xs = {Fraction(0)}
    else:
        xs = {x for x in set(F.breakpoints).union(g.breakpoints) if w[0] < x < w[1]}
        xs.update(w)
    return min(F.value_ext(x) - g.value_ext(x) for x in xs)


def _residuate(F: PLFunction, funcs, support) -> List:
    coeffs = [BOTTOM] * len(funcs)
    for k in support:
        coeffs[k] = _inf_gap(F, funcs[k])
    return coeffs


def principal_coefficients(F: PLFunction, basis, support) -> Representation:
    """Largest coefficients on ``support`` with ``max_k (b_k + f_k) <= F``."""
    support = tuple(support)
    if not support:
        raise DomainError("support must be nonempty")
    return Representation(_residuate(F, _funcs(basis), support))


def verify_representation(F: PLFunction, basis, rep: Representation) -> bool:
    if not rep.support:
        return False
    return pl_equal(combine(basis, rep), F)


def _representable_on(F, funcs, support) -> bool:
    rep = Representation(_residuate(F, funcs, support))
    return verify_representation(F, funcs, rep)


def shortest_length(F: PLFunction, basis, cap: int = DEFAULT_BASIS_CAP) -> int:
    """Smallest support size of a representation of ``F`` over ``basis``."""
    funcs = _funcs(basis)
    n = len(funcs)
    if n > cap:
        raise CapExceededError(f"basis of size {n} exceeds cap {cap}")
    if not _representable_on(F, funcs, range(n)):
        raise DomainError("function is not in the span of the basis")
    for size in range(1, n + 1):
        for s in itertools.combinations(range(n), size):
            if _representable_on(F, funcs, s):
                return size
    return n  # unreachable: the full support verified above


def ddg(Q: Sequence[PLFunction], basis, cap: int = DEFAULT_BASIS_CAP) -> int:
    """Number of members of ``Q`` with shortest length below the basis size."""
    n = len(_funcs(basis))
    return sum(1 for F in Q if shortest_length(F, basis, cap) < n)


def verify_certificate(funcs: Sequence[PLFunction], cert: DependenceCertificate) -> bool:
    funcs = tuple(funcs)
    a = cert.coefficients.coefficients
    if len(a) != len(funcs) or set(cert.I) & set(cert.J):
        return False
    if set(cert.I) | set(cert.J) != set(range(len(funcs))):
        return False
    si = [i for i in cert.I if a[i] is not BOTTOM]
    sj = [j for j in cert.J if a[j] is not BOTTOM]
    if not si or not sj:
        return False
    return pl_equal(_combine_on(funcs, a, si), _combine_on(funcs, a, sj))


def _alternate(funcs, left, right, max_iter):
    """Alternating method for ``max_left = max_right`` started at zero."""
    n = len(funcs)
    x = [BOTTOM] * n
    for i in left:
        x[i] = Fraction(0)
    for _ in range(max_iter):
        sl = [i for i in left if x[i] is not BOTTOM]
        if not sl:
            return None
        A = _combine_on(funcs, x, sl)
        y = _residuate(A, funcs, right)
        sr = [j for j in right if y[j] is not BOTTOM]
        if not sr:
            return None
        B = _combine_on(funcs, y, sr)
        if pl_equal(A, B):
            out = list(x)
            for j in right:
                out[j] = y[j]
            return out
        x_new = _residuate(B, funcs, left)
        if x_new == x:
            return None
        x = x_new
    return None


def gm_dependent(
    funcs: Sequence[PLFunction], cap: int = DEFAULT_BASIS_CAP, max_iter: int = DEFAULT_MAX_ITER
) -> Verdict:
    """Search for a Gondran-Minoux dependence among ``funcs``."""
    funcs = tuple(funcs)
    n = len(funcs)
    if n < 2:
        raise DomainError("need at least two functions")
    if n > cap:
        raise CapExceededError(f"{n} functions exceed cap {cap}")
    idx = range(n)
    pairs = []
    for labels in itertools.product((0, 1, 2), repeat=n):
        left = tuple(i for i in idx if labels[i] == 1)
        right = tuple(i for i in idx if labels[i] == 2)
        if left and right and left[0] < right[0]:
            pairs.append((left, right))
    pairs.sort(key=lambda p: (len(p[0]) + len(p[1]), p))
    for left, right in pairs:
        coeffs = _alternate(funcs, left, right, max_iter)
        if coeffs is None:
            continue
        rest = tuple(i for i in idx if i not in left)
        cert = DependenceCertificate(left, rest, Representation(coeffs))
        if verify_certificate(funcs, cert):
            return Verdict(True, DependenceCertificate(left, rest, cert.coefficients, True), max_iter)
    return Verdict(False, None, max_iter)


def algebraic_lift(f: TropCurve, d: int) -> Basis:
    """The family ``f^I = sum_j i_j f_j`` over all multi-indices of degree ``d``."""
    if d < 1:
        raise DomainError("degree must be at least 1")
    comps = f.components
    idxs = tuple(monomial_basis(len(comps) - 1, d))
    w = f.window
    funcs = []
    for I in idxs:
        parts = [pl_scale(g, i) for i, g in zip(I, comps) if i]
        funcs.append(pl_sum(parts) if parts else PLFunction.constant(0, w))
    return Basis(tuple(funcs), "algebraic", len(comps) - 1, d, idxs)


def nondegenerate(
    f: TropCurve, d: int, cap: int = DEFAULT_BASIS_CAP, max_iter: int = DEFAULT_MAX_ITER
) -> Verdict:
    """Dependence search on the degree-``d`` lift of ``f``."""
    return gm_dependent(algebraic_lift(f, d).functions, cap, max_iter)
