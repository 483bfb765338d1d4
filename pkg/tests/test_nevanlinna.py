import math
from fractions import Fraction as F

import pytest

from tropnev import (
    DomainError,
    NevSample,
    PLFunction,
    TropCurve,
    WindowError,
    cartan_T,
    characteristic_T,
    counting_N,
    counting_N_truncated,
    counting_n,
    curve_from_meromorphic,
    growth_fit,
    inf_at_poles,
    jensen_residual,
    log_derivative_ratio,
    nevanlinna_table,
    plus_part,
    proximity,
    value_fmt_residual,
)
from tropnev.generators import e_alpha

from corpus import rational_corpus
from oracles import direct_T, integrated_N

X = PLFunction.affine(1, 0)
NEG_ABS = PLFunction.from_points([(0, 0)], 1, -1)
ABS = PLFunction.from_points([(0, 0)], -1, 1)
RELU = PLFunction.from_monomials([(0, 0), (1, 0)])


def poles_at_pm(b, left=F(3, 2), values=(2, 3)):
    # two simple poles at -b and b
    mid = F(values[1] - values[0], 2 * b)
    f = PLFunction.from_points([(-b, values[0]), (b, values[1])], mid + 1, mid - 1)
    return f


def test_proximity_examples():
    assert proximity(X, 4) == 2
    assert all(proximity(NEG_ABS, r) == 0 for r in (1, 5, 17))
    assert proximity(ABS, 3) == 3


def test_counting_n_examples():
    assert counting_n(NEG_ABS, 1) == 2
    assert counting_n(RELU, 9) == 0
    f = poles_at_pm(2)
    assert counting_n(f, 3) == 2
    assert counting_n(f, 2) == 0


def test_counting_N_examples():
    assert counting_N(NEG_ABS, 5) == 5
    assert counting_N(RELU, 5) == 0
    f = poles_at_pm(1)
    assert counting_N(f, 3) == 2
    assert integrated_N(f, F(3)) == 2


def test_truncated_counting():
    assert counting_N_truncated(NEG_ABS, 5, 1) == F(5, 2)
    assert counting_N_truncated(NEG_ABS, 5, 2) == counting_N(NEG_ABS, 5)
    assert counting_N_truncated(RELU, 5, 1) == 0
    with pytest.raises(DomainError):
        counting_N_truncated(NEG_ABS, 5, 0)


def test_characteristic_examples():
    assert characteristic_T(X, 4).T == 2
    s = characteristic_T(NEG_ABS, 5)
    assert (s.m, s.N, s.T) == (0, 5, 5)


def test_T_grows_linearly_for_rational():
    for f in rational_corpus()[:50]:
        # m(r) settles once f and f^+ have no knots left beyond r
        knots = [abs(b) for b in f.breakpoints + plus_part(f).breakpoints] or [F(0)]
        r0 = max(knots) + 1
        t = [characteristic_T(f, r0 + k).T for k in range(4)]
        diffs = {b - a for a, b in zip(t, t[1:])}
        assert len(diffs) == 1


def test_T_matches_direct_oracle():
    for f in rational_corpus()[:100]:
        for r in (F(1, 3), F(2), F(7), F(41, 2)):
            assert characteristic_T(f, r).T == direct_T(f, r)


def test_jensen_examples():
    assert jensen_residual(RELU, 2) == 0
    assert all(jensen_residual(NEG_ABS, r) == 0 for r in range(1, 20))
    assert all(jensen_residual(PLFunction.affine(F(-3, 7), 5), r) == 0 for r in (1, 9))


def test_inf_at_poles():
    assert inf_at_poles(NEG_ABS) == 0
    assert inf_at_poles(RELU) == math.inf
    assert inf_at_poles(poles_at_pm(1)) == 2


def test_value_fmt_residual_constant_without_poles():
    f = PLFunction.from_monomials([(-1, 0), (0, 1), (2, -3)])
    vals = {value_fmt_residual(f, -2, r) for r in range(1, 60)}
    assert len(vals) == 1


def test_value_fmt_residual_bounded_with_poles():
    vals = [value_fmt_residual(NEG_ABS, -1, r) for r in range(1, 101)]
    assert max(vals) - min(vals) <= 2


def test_value_fmt_precondition():
    with pytest.raises(DomainError):
        value_fmt_residual(NEG_ABS, 0, 3)


def test_cartan_examples():
    curve = TropCurve([PLFunction.constant(0), X])
    assert cartan_T(curve, 3) == F(3, 2)
    const = TropCurve([PLFunction.constant(0), PLFunction.constant(2)])
    assert all(cartan_T(const, r) == 0 for r in (1, 4, 9))


def test_cartan_tracks_T_of_meromorphic():
    for f in rational_corpus()[:40]:
        curve = curve_from_meromorphic(f)
        diffs = [cartan_T(curve, r) - characteristic_T(f, r).T for r in range(1, 200, 7)]
        assert max(diffs) - min(diffs) <= 2 * max(abs(f(0)), 1) + 2 * max((abs(y) for y in f.values), default=0)


def test_cartan_minus_T_is_eventually_constant():
    for f in rational_corpus()[:40]:
        curve = curve_from_meromorphic(f)
        r0 = max([abs(b) for b in f.breakpoints], default=F(0)) + 1
        diffs = {cartan_T(curve, r0 + k) - characteristic_T(f, r0 + k).T for k in range(5)}
        assert len(diffs) == 1


def test_log_derivative_ratio_small():
    f = PLFunction.affine(3, 1)
    assert log_derivative_ratio(f, 1, 1000) <= F(1, 100)
    ratios = [log_derivative_ratio(NEG_ABS, 1, r) for r in (10, 100, 1000)]
    assert ratios == sorted(ratios, reverse=True)
    assert ratios[-1] < F(1, 100)
    with pytest.raises(DomainError):
        log_derivative_ratio(f, 0, 3)


def test_radius_must_fit_window():
    f = PLFunction.from_points([(0, 0)], -1, 1, window=(-3, 3))
    with pytest.raises(WindowError):
        characteristic_T(f, 4)
    with pytest.raises(DomainError):
        characteristic_T(f, 0)


def test_growth_fit_power_laws():
    rs = [F(k) for k in range(2, 60, 3)]
    lin = growth_fit([NevSample(r, r, F(0), r) for r in rs])
    quad = growth_fit([NevSample(r, r * r, F(0), r * r) for r in rs])
    assert abs(lin.order - 1) <= 0.05
    assert abs(quad.order - 2) <= 0.05
    assert lin.approximate


def test_growth_fit_e_alpha_rate():
    f = e_alpha(2, (-40, 40))
    rep = growth_fit(nevanlinna_table(f, [F(r) for r in range(10, 40)]))
    assert abs(rep.exp_rate - math.log(2)) < 0.05


def test_growth_fit_needs_samples():
    with pytest.raises(DomainError):
        growth_fit([NevSample(F(1), F(1), F(0), F(1))])
