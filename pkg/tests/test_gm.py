import random
from fractions import Fraction as F

import pytest

from tropnev import (
    BOTTOM,
    Basis,
    CapExceededError,
    DomainError,
    PLFunction,
    Representation,
    TropCurve,
    algebraic_lift,
    combine,
    compose,
    curve_from_meromorphic,
    ddg,
    gm_dependent,
    nondegenerate,
    pl_max,
    principal_coefficients,
    shortest_length,
    tp1_value_polynomial,
    verify_certificate,
    verify_representation,
)
from tropnev.generators import random_curve

from corpus import smt_corpus, tp1_value_sets
from oracles import brute_shortest_length

ZERO = PLFunction.constant(0)
X = PLFunction.affine(1, 0)


def basis3():
    return Basis((ZERO, X, PLFunction.affine(2, -3)))


def test_combine_examples():
    b = basis3()
    assert combine(b, Representation((BOTTOM, 0, BOTTOM))) == X
    two = combine(b, Representation((1, BOTTOM, 0)))
    assert two == pl_max(PLFunction.constant(1), PLFunction.affine(2, -3))
    rng = random.Random(0)
    rep = Representation((F(1, 2), F(-1), F(2)))
    F_ = combine(b, rep)
    for _ in range(100):
        x = F(rng.randint(-99, 99), 7)
        assert F_(x) == max(a + f(x) for a, f in zip(rep.coefficients, b.functions))


def test_principal_coefficients_examples():
    b = basis3()
    assert principal_coefficients(X, b, [1]).coefficients == (BOTTOM, 0, BOTTOM)
    F_ = pl_max(ZERO, X)
    rep = principal_coefficients(F_, b, [0, 1])
    assert rep.coefficients[:2] == (0, 0)
    assert verify_representation(F_, b, rep)


def test_principal_coefficient_gap_and_tails():
    # F - 0 = |x| + 1 bottoms out at the knot; F - (2x - 3) is unbounded below
    F_ = PLFunction.from_points([(0, 1)], -1, 1)
    assert principal_coefficients(F_, basis3(), [1]).coefficients[1] == 1
    rep = principal_coefficients(F_, basis3(), [0, 2])
    assert rep.coefficients[0] == 1
    assert rep.coefficients[2] is BOTTOM
    assert not verify_representation(F_, basis3(), rep)


def test_shortest_length_examples():
    b = basis3()
    assert shortest_length(ZERO, b) == 1
    assert shortest_length(pl_max(ZERO, X), b) == 2
    full = combine(b, Representation((0, F(1, 2), 0)))
    assert shortest_length(full, b) == 3
    with pytest.raises(DomainError):
        shortest_length(PLFunction.affine(3, 0), b)
    with pytest.raises(CapExceededError):
        shortest_length(ZERO, b, cap=2)


def test_ddg_examples():
    b = basis3()
    full = combine(b, Representation((0, F(1, 2), 0)))
    assert ddg([full, full], b) == 0
    assert ddg([X, full], b) >= 1
    assert ddg([X, pl_max(ZERO, X), full], b) == 2


def test_gm_examples():
    v = gm_dependent([X, X])
    assert v.dependent
    assert v.certificate.I == (0,) and v.certificate.J == (1,)
    assert v.certificate.coefficients.coefficients == (0, 0)
    assert str(v.certificate) == "I={0}|J={1}|a=(0,0)"
    w = gm_dependent([ZERO, X])
    assert not w.dependent
    assert str(w).startswith("independent(presumed")


def test_gm_three_term_dependence():
    v = gm_dependent([ZERO, X, pl_max(ZERO, X)])
    assert v.dependent and verify_certificate([ZERO, X, pl_max(ZERO, X)], v.certificate)


def test_algebraic_lift():
    c = TropCurve([ZERO, X])
    assert algebraic_lift(c, 1).functions == (ZERO, X)
    assert algebraic_lift(c, 2).functions == (PLFunction.constant(0), X, PLFunction.affine(2, 0))
    assert len(algebraic_lift(random_curve(1, n=2), 2)) == 6


def test_nondegenerate_examples():
    c = TropCurve([ZERO, X])
    assert not nondegenerate(c, 1).dependent
    assert not nondegenerate(c, 2).dependent
    const = TropCurve([ZERO, PLFunction.constant(1)])
    v = nondegenerate(const, 1)
    assert v.dependent and v.certificate.verified


def test_tp1_values_give_zero_ddg():
    for f, vals in tp1_value_sets(10, strict=True):
        curve = curve_from_meromorphic(f)
        comps = [compose(tp1_value_polynomial(a), curve) for a in vals]
        assert ddg(comps, algebraic_lift(curve, 1)) == 0


def test_certificate_tamper_detection():
    v = gm_dependent([X, X])
    bad = type(v.certificate)((0,), (1,), Representation((0, 1)))
    assert not verify_certificate([X, X], bad)


def test_shortest_length_matches_exhaustive_enumeration():
    for inst in smt_corpus()[:15]:
        funcs = inst.lift.functions
        if len(funcs) > 6:
            continue
        for g in inst.g:
            assert shortest_length(g, inst.lift) == brute_shortest_length(g, funcs)
