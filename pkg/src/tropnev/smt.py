"""Second Main Theorem harness: assemble every quantity and check it per radius.

For piecewise-linear data with finitely many breakpoints every functional
is eventually affine in ``r``.  The harness therefore reports, next to the
per-radius residual table, the stabilization radius beyond which all rows
are affine and the exact affine tail of every residual.  Asymptotic claims
(``o(T)``) are checked as ``|residual| / T <= tol`` on the top decade of the
grid; exact identities are checked with zero tolerance.

Inequalities that hold only up to a bounded error are checked against
explicit constants computed from the instance (``slack_*`` fields), each of
which bounds the corresponding difference at every radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DegenerateError, DomainError
from .gm import Basis, Verdict, algebraic_lift, ddg, nondegenerate, shortest_length
from .hypersurface import (
    PLUS_INF,
    TropPolynomial,
    coef_norm,
    compose,
    curve_in_hypersurface,
    fmt_constant,
    poly_power,
    proximity_hyp,
    tp1_value_polynomial,
)
from .nevanlinna import cartan_T, counting_N, proximity
from .plfun import (
    PLFunction,
    pl_equal,
    pl_max,
    pl_neg,
    pl_shift,
    pl_sub,
    pl_sum,
    plus_part,
    supremum,
)
from .projective import TropCurve, curve_from_meromorphic, norm_function
from .semiring import BOTTOM, to_rational
from .troplinalg import DEFAULT_CASORATIAN_CAP, casoratian

__all__ = [
    "SMTInstance",
    "SMTReport",
    "DefectReport",
    "TP1Report",
    "build_instance",
    "lambda_ddg",
    "l_functions",
    "l_diagnostic",
    "smt_check",
    "tp1_smt_check",
    "absorption_check",
    "value_root_gap",
    "defect",
    "defect_relation_check",
    "top_decade",
    "DEFAULT_TOL",
]

DEFAULT_TOL = Fraction(1, 20)


def _roots_N(f: PLFunction, r) -> Fraction:
    return counting_N(pl_neg(f), r)


def top_decade(radii: Sequence[Fraction]) -> List[Fraction]:
    if not radii:
        return []
    rmax = max(radii)
    return [r for r in radii if r >= rmax / 10]


def _max_abs_breakpoint(fs) -> Fraction:
    out = Fraction(0)
    for f in fs:
        for x in f.breakpoints:
            out = max(out, abs(x))
    return out


def _affine_tail(fn, rstar) -> Tuple[Fraction, Fraction]:
    """Slope and intercept of ``fn`` on ``[rstar, inf)``, assuming it is affine there."""
    a, b = rstar + 1, rstar + 2
    ya, yb = fn(a), fn(b)
    s = yb - ya
    return s, ya - s * a


@dataclass
class SMTInstance:
    curve: TropCurve
    polys: Tuple[TropPolynomial, ...]
    degrees: Tuple[int, ...]
    d: int
    n: int
    M: int
    c: Fraction
    grid: Tuple[Fraction, ...]
    verdict: Optional[Verdict]
    compositions: Tuple[PLFunction, ...]  # P_j o f
    g: Tuple[PLFunction, ...]  # P_j^(d/d_j) o f
    lift: Basis

    @property
    def q(self) -> int:
        return len(self.polys)


def build_instance(
    f: TropCurve,
    polys: Sequence[TropPolynomial],
    c=1,
    grid=(),
    check_nondegenerate: bool = True,
    max_iter: int = 64,
) -> SMTInstance:
    polys = tuple(polys)
    n = f.n
    q = len(polys)
    if q < n:
        raise DomainError(f"need q >= n, got q = {q}, n = {n}")
    c = to_rational(c)
    if c == 0:
        raise DomainError("shift c must be nonzero")
    degrees = []
    for p in polys:
        if p.nvars != n + 1:
            raise DomainError("polynomial and curve dimensions disagree")
        if not p.integral or not isinstance(p.degree, int):
            raise DomainError("target polynomials need integer exponents")
        degrees.append(p.degree)
    d = lcm(*degrees) if degrees else 1
    M = comb(n + d, d) - 1
    verdict = None
    if check_nondegenerate:
        verdict = nondegenerate(f, d, max_iter=max_iter)
        if verdict.dependent:
            raise DegenerateError(f"curve is degenerate: {verdict}", verdict.certificate)
    comps = tuple(compose(p, f) for p in polys)
    g = tuple(compose(poly_power(p, d), f) for p in polys)
    return SMTInstance(
        f, polys, tuple(degrees), d, n, M, c, tuple(to_rational(r) for r in grid), verdict, comps, g,
        algebraic_lift(f, d),
    )


def lambda_ddg(inst: SMTInstance) -> int:
    tail = inst.g[inst.M + 1 :]
    if not tail:
        return 0
    return ddg(tail, inst.lift)


def _complete_flags(inst: SMTInstance) -> List[bool]:
    size = len(inst.lift)
    return [shortest_length(gv, inst.lift) == size for gv in inst.g[inst.M + 1 :]]


def l_functions(inst: SMTInstance, cap: int = DEFAULT_CASORATIAN_CAP) -> Dict[str, PLFunction]:
    """``C``, ``L``, ``L~``, ``psi`` and ``K`` as PL functions."""
    M, c, g = inst.M, inst.c, inst.g
    if inst.q < M + 1:
        raise DomainError(f"need q >= M+1 = {M + 1} targets, got {inst.q}")
    head = list(g[: M + 1])
    C = casoratian(head, c, cap)
    w = C.window
    zero = PLFunction.constant(0, w)
    L = pl_sub(pl_sum(list(g) + [zero]), C)
    shifted = [head[0]] + [pl_shift(head[k], k * c) for k in range(1, M + 1)]
    psi = pl_sum(list(g[M + 1 :]) + [zero])
    Lt = pl_sub(pl_sum(shifted + list(g[M + 1 :]) + [zero]), C)
    diffs = [PLFunction.constant(0)] + [pl_sub(head[k], head[0]) for k in range(1, M + 1)]
    K = pl_sum(
        [casoratian(diffs, c, cap)]
        + [pl_sub(pl_shift(head[0], k * c), pl_shift(head[k], k * c)) for k in range(1, M + 1)]
        + [zero]
    )
    return {"C": C, "L": L, "Ltilde": Lt, "psi": psi, "K": K}


def l_diagnostic(inst: SMTInstance, r, funcs: Optional[Dict[str, PLFunction]] = None) -> Dict[str, Fraction]:
    """Exact per-radius quantities built from ``L``, ``L~``, ``psi`` and ``K``."""
    fs = funcs or l_functions(inst)
    r = to_rational(r)
    L = fs["L"]
    nl = counting_N(pl_neg(L), r) - counting_N(L, r)
    ej = sum((_roots_N(gj, r) for gj in inst.g), Fraction(0)) - _roots_N(fs["C"], r)
    return {
        "NL": nl,
        "Ej_rhs": ej,
        "counting_residual": nl - ej,
        "mK": proximity(fs["K"], r),
    }


@dataclass
class SMTReport:
    q: int
    n: int
    d: int
    M: int
    lam: int
    columns: List[str]
    rows: List[Dict[str, Fraction]]
    slack: Dict[str, Fraction]
    stabilization_radius: Fraction
    passes_stabilization: bool
    tails: Dict[str, Tuple[Fraction, Fraction]]
    chain_ok: bool
    equality_ok: Optional[bool]
    exact_ok: bool
    psi_identity: bool
    truncated: List[Fraction] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.chain_ok and self.exact_ok and self.equality_ok is not False


SMT_COLUMNS = [
    "r", "m", "N", "T", "lhs", "mid_full", "mid_tail", "rhs", "casoratian_N",
    "chain1", "chain2", "chain3", "eq_full", "eq_tail", "NL", "counting_residual", "mK",
]


def _usable(radii, windows):
    keep, drop = [], []
    for r in radii:
        if all(w is None or (w[0] <= -r and r <= w[1]) for w in windows):
            keep.append(r)
        else:
            drop.append(r)
    return keep, drop


def smt_check(inst: SMTInstance, tol=DEFAULT_TOL, grid=None, cap: int = DEFAULT_CASORATIAN_CAP) -> SMTReport:
    """Per-radius check of the hypersurface Second Main Theorem chain.

    Rows (all divided into the theorem's normalization):

    * ``lhs = (q - M - 1 - lam) T_f``
    * ``mid_full = sum_j N_j / d_j - N(1/C) / d`` with ``C`` the Casoratian
    * ``mid_tail = sum_{j >= M+2} N_j / d_j``
    * ``rhs = (q - M - 1) T_f``

    ``chain1 = mid_full + slack_1 - lhs``, ``chain2 = mid_tail + slack_2 -
    mid_full`` and ``chain3 = rhs + slack_3 - mid_tail`` must be nonnegative
    at every radius.  When ``lam = 0`` the equality rows ``eq_full =
    mid_full - rhs`` and ``eq_tail = mid_tail - rhs`` must be small relative
    to ``T_f`` on the top decade.
    """
    tol = to_rational(tol)
    f = inst.curve
    q, M, d = inst.q, inst.M, inst.d
    lam = lambda_ddg(inst)
    fs = l_functions(inst, cap)
    C, K, L = fs["C"], fs["K"], fs["L"]
    psi_ok = pl_equal(fs["psi"], pl_sum([fs["Ltilde"], K]))

    # bounds valid at every radius
    zero = Fraction(0)
    c = inst.c
    head = inst.g[: M + 1]
    shift_slack = sum((k * abs(c) * max(abs(s) for s in head[k].slopes) for k in range(1, M + 1)), zero)
    norm0 = max(comp(zero) for comp in f.components)
    ex = q - M - 1
    complete = _complete_flags(inst)
    d0 = (ex - lam) * d * norm0
    for gv, p, full in zip(inst.g[M + 1 :], inst.polys[M + 1 :], complete):
        if full:
            d0 += min(poly_power(p, d).terms.values())
        else:
            d0 += gv(zero)
    supk = supremum(K)
    slack1 = (supk + shift_slack + L(zero) - d0) / d if supk != math.inf else None
    slack2 = (shift_slack + C(zero) - sum((h(zero) for h in head), zero)) / d
    slack3 = sum(
        ((fmt_constant(p, f) - (dj - 1) * coef_norm(p)) / dj for p, dj in zip(inst.polys[M + 1 :], inst.degrees[M + 1 :])),
        zero,
    )
    slack = {"slack_1": slack1, "slack_2": slack2, "slack_3": slack3}

    radii = sorted(set(inst.grid if grid is None else (to_rational(r) for r in grid)))
    windows = [f.window, C.window, K.window]
    radii, dropped = _usable(radii, windows)

    def row(r):
        T = cartan_T(f, r)
        Nj = [_roots_N(pj, r) for pj in inst.compositions]
        mj = [proximity_hyp(p, f, r) for p in inst.polys]
        sumN = sum((n / dj for n, dj in zip(Nj, inst.degrees)), zero)
        summ = sum((m / dj for m, dj in zip(mj, inst.degrees)), zero)
        casN = _roots_N(C, r) / d
        mid_full = sumN - casN
        mid_tail = sum((n / dj for n, dj in zip(Nj[M + 1 :], inst.degrees[M + 1 :])), zero)
        lhs = (ex - lam) * T
        rhs = ex * T
        diag = l_diagnostic(inst, r, fs)
        out = {
            "r": r, "m": summ, "N": sumN, "T": T, "lhs": lhs, "mid_full": mid_full,
            "mid_tail": mid_tail, "rhs": rhs, "casoratian_N": casN,
            "chain1": (mid_full + slack1 - lhs) if slack1 is not None else mid_full - lhs,
            "chain2": mid_tail + slack2 - mid_full,
            "chain3": rhs + slack3 - mid_tail,
            "eq_full": mid_full - rhs, "eq_tail": mid_tail - rhs,
            "NL": diag["NL"], "counting_residual": diag["counting_residual"], "mK": diag["mK"],
        }
        # scaled counting identity for the degree-d lift
        out["_scaled_ok"] = all(
            _roots_N(gj, r) == Fraction(d, dj) * n for gj, n, dj in zip(inst.g, Nj, inst.degrees)
        )
        return out

    rows = [row(r) for r in radii]
    violations = []
    chain_ok = True
    exact_ok = psi_ok
    for rw in rows:
        for key in ("chain1", "chain2", "chain3"):
            if key == "chain1" and slack1 is None:
                continue
            if rw[key] < 0:
                chain_ok = False
                violations.append(f"{key} < 0 at r = {rw['r']}")
        scaled_ok = rw.pop("_scaled_ok")
        if rw["counting_residual"] != 0 or not scaled_ok:
            exact_ok = False
            violations.append(f"exact identity fails at r = {rw['r']}")
    if not psi_ok:
        violations.append("psi != Ltilde + K")

    equality_ok = None
    if lam == 0 and rows:
        equality_ok = True
        top = set(top_decade([rw["r"] for rw in rows]))
        for rw in rows:
            if rw["r"] in top:
                if rw["T"] <= 0:
                    equality_ok = False
                    violations.append(f"T_f(r) = 0 at top-decade radius {rw['r']}")
                    continue
                for key in ("eq_full", "eq_tail"):
                    if abs(rw[key]) / rw["T"] > tol:
                        equality_ok = False
                        violations.append(f"|{key}|/T > {tol} at r = {rw['r']}")

    # every row is made of these functions evaluated at +-r (the Weil
    # functions break only where the norm or a composition does)
    rstar = _max_abs_breakpoint([norm_function(f), C, plus_part(K), L] + list(inst.compositions))
    tails = {}
    if f.window is None and C.window is None:
        probe = {}

        def col(name):
            def fn(r):
                if r not in probe:
                    probe[r] = row(r)
                return probe[r][name]

            return fn

        for name in ("eq_full", "eq_tail", "chain1", "chain2", "chain3", "mK", "T"):
            tails[name] = _affine_tail(col(name), rstar)
    passes = bool(radii) and max(radii) > rstar
    return SMTReport(
        q, inst.n, d, M, lam, list(SMT_COLUMNS), rows, slack, rstar, passes, tails,
        chain_ok, equality_ok, exact_ok, psi_ok, dropped, violations,
    )


# -- TP^1 -------------------------------------------------------------------


def _is_finite(a) -> bool:
    return a is not BOTTOM and a != PLUS_INF


@dataclass
class TP1Report:
    values: List
    absorbed: List[bool]  # f max a == f
    absorbing: List[bool]  # f max a == a
    equality_rows: List[Dict[str, Fraction]]
    equality_applicable: bool
    value_equality_ok: Optional[bool]
    absorption_ok: bool
    smt: Optional[SMTReport]
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.absorption_ok and self.value_equality_ok is not False and (self.smt is None or self.smt.ok)


def absorption_check(f: PLFunction, a, radii) -> Dict[str, bool]:
    """Exact counting identities in the two degenerate cases for a value ``a``.

    Absorbed (``f max a == f``): roots of ``P o f`` are counted like roots of
    ``f max a``.  Absorbing (``f max a == a``): roots of ``P o f`` are counted
    like poles of ``f`` and ``f max a`` has no roots.
    """
    curve = curve_from_meromorphic(f)
    p = tp1_value_polynomial(a)
    pf = compose(p, curve)
    out = {"absorbed": False, "absorbing": False, "holds": True}
    if a is BOTTOM or a == PLUS_INF:
        fa = f if a is BOTTOM else None
    else:
        fa = pl_max(f, PLFunction.constant(a, f.window))
    if a is BOTTOM or (fa is not None and pl_equal(fa, f)):
        out["absorbed"] = True
        for r in radii:
            if _roots_N(pf, r) != _roots_N(f if fa is None else fa, r):
                out["holds"] = False
    if a == PLUS_INF or (a is not BOTTOM and pl_equal(fa, PLFunction.constant(a, f.window))):
        out["absorbing"] = True
        for r in radii:
            if _roots_N(pf, r) != counting_N(f, r):
                out["holds"] = False
            if fa is not None and _roots_N(fa, r) != 0:
                out["holds"] = False
    return out


def value_root_gap(f: PLFunction, a, radii) -> List[Dict[str, Fraction]]:
    """Compare the root counts of ``P o f`` and of ``f max a`` for a finite value ``a``.

    The two numbers need not agree; what always holds is
    ``N(1/(P o f)) <= N(1/(f max a)) + N(f)``.  Each row reports both counts,
    their difference and the slack in that inequality, so a nonzero
    ``difference`` is a recorded counterexample to equality.
    """
    a = to_rational(a)
    pf = compose(tp1_value_polynomial(a), curve_from_meromorphic(f))
    fa = pl_max(f, PLFunction.constant(a, f.window))
    rows = []
    for r in radii:
        r = to_rational(r)
        n_pf, n_fa, n_poles = _roots_N(pf, r), _roots_N(fa, r), counting_N(f, r)
        rows.append(
            {"r": r, "N_Pf": n_pf, "N_fa": n_fa, "difference": n_pf - n_fa, "slack": n_fa + n_poles - n_pf}
        )
    return rows


def tp1_smt_check(f: PLFunction, values, c=1, grid=(), tol=DEFAULT_TOL, max_iter: int = 64) -> TP1Report:
    """Second Main Theorem checks for a meromorphic function and values of TP^1."""
    tol = to_rational(tol)
    if f.is_affine() and f.left_slope == 0:
        raise DomainError("f must be nonconstant")
    vals = []
    for a in values:
        if a is BOTTOM or a == PLUS_INF:
            vals.append(a)
        elif isinstance(a, str) and a.strip() in ("-inf", "+inf", "inf"):
            vals.append(BOTTOM if a.strip() == "-inf" else PLUS_INF)
        else:
            vals.append(to_rational(a))
    if len(set(vals)) != len(vals):
        raise DomainError("values must be distinct")
    curve = curve_from_meromorphic(f)
    polys = [tp1_value_polynomial(a) for a in vals]
    radii = sorted(set(to_rational(r) for r in grid))
    absorbed, absorbing = [], []
    violations = []
    absorption_ok = True
    for a in vals:
        res = absorption_check(f, a, radii)
        absorbed.append(res["absorbed"])
        absorbing.append(res["absorbing"])
        if not res["holds"]:
            absorption_ok = False
            violations.append(f"absorption counting identity fails for a = {a}")

    equality_applicable = all(_is_finite(a) for a in vals) and not any(absorbing)
    rows = []
    value_equality_ok = None
    if equality_applicable:
        comps = [compose(p, curve) for p in polys]
        q = len(vals)
        for r in radii:
            T = cartan_T(curve, r)
            sN = sum((_roots_N(pc, r) for pc in comps), Fraction(0))
            rows.append({"r": r, "T": T, "sumN": sN, "residual": q * T - sN})
        value_equality_ok = True
        top = set(top_decade(radii))
        for rw in rows:
            if rw["r"] in top:
                if rw["T"] <= 0 or abs(rw["residual"]) / rw["T"] > tol:
                    value_equality_ok = False
                    violations.append(f"|qT - sum N|/T > {tol} at r = {rw['r']}")

    smt = None
    if len(vals) >= 2:
        inst = build_instance(curve, polys, c, radii, max_iter=max_iter)
        smt = smt_check(inst, tol)
        violations += smt.violations
    return TP1Report(vals, absorbed, absorbing, rows, equality_applicable, value_equality_ok, absorption_ok, smt, violations)


# -- defects ----------------------------------------------------------------


@dataclass
class DefectReport:
    radii: List[Fraction]
    proximity_ratio: List[Fraction]  # m_f / (d T_f)
    counting_ratio: List[Fraction]  # 1 - N / (d T_f)
    estimate: Fraction  # tail estimate (raw)
    exact: bool  # estimate is the exact limit
    stabilization_radius: Optional[Fraction]
    clamped: bool = False
    warnings: List[str] = field(default_factory=list)

    @property
    def value(self) -> Fraction:
        """Estimate clamped into ``[0, 1]``."""
        return min(max(self.estimate, Fraction(0)), Fraction(1))


def defect(v, f: TropCurve, grid=()) -> DefectReport:
    """Defect of ``f`` for the hypersurface of ``v``.

    For window-free data the exact limit of ``m_f / (d T_f)`` is computed
    from the affine tails past the stabilization radius.  For windowed data
    the value at the largest grid radius is reported as an estimate.
    """
    p = v.polynomial if hasattr(v, "polynomial") else v
    if curve_in_hypersurface(p, f):
        raise DegenerateError("curve lies inside the hypersurface")
    d = p.degree
    pf = compose(p, f)
    radii = sorted(set(to_rational(r) for r in grid))
    prox, cnt = [], []
    warnings = []
    kept = []
    for r in radii:
        T = cartan_T(f, r)
        if T == 0:
            continue
        kept.append(r)
        prox.append(proximity_hyp(p, f, r) / (d * T))
        cnt.append(1 - _roots_N(pf, r) / (d * T))
    if len(kept) < len(radii):
        warnings.append(f"skipped radii where T_f(r) = 0: {len(radii) - len(kept)}")
    radii = kept
    if f.window is None:
        nf = norm_function(f)
        rstar = _max_abs_breakpoint([nf, pf])
        am, _ = _affine_tail(lambda r: proximity_hyp(p, f, r), rstar)
        at, _ = _affine_tail(lambda r: cartan_T(f, r), rstar)
        if at == 0:
            raise DomainError("T_f is eventually constant; the defect is undefined")
        est = am / (d * at)
        exact = True
    else:
        if not radii:
            raise DomainError("windowed defect needs a nonempty grid")
        rstar = None
        est = prox[-1]
        exact = False
        warnings.append("windowed input: value at the largest radius, not a limit")
    clamped = not (0 <= est <= 1)
    if clamped:
        warnings.append(f"raw estimate {est} outside [0, 1]")
    return DefectReport(radii, prox, cnt, est, exact, rstar, clamped, warnings)


def defect_relation_check(inst: SMTInstance) -> Dict:
    """Defect sums against ``M + 1 + lam`` and ``lam``."""
    lam = lambda_ddg(inst)
    defs = [defect(p, inst.curve, inst.grid).estimate for p in inst.polys]
    total = sum(defs, Fraction(0))
    tail = sum(defs[inst.M + 1 :], Fraction(0))
    ok_total = total <= inst.M + 1 + lam
    ok_tail = tail <= lam
    ok_zero = lam != 0 or all(x == 0 for x in defs[inst.M + 1 :])
    return {
        "defects": defs,
        "lam": lam,
        "sum": total,
        "tail_sum": tail,
        "bound_total": inst.M + 1 + lam,
        "ok_total": ok_total,
        "ok_tail": ok_tail,
        "ok_zero_tail": ok_zero,
        "ok": ok_total and ok_tail and ok_zero,
    }
