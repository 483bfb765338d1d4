import random
import time
from fractions import Fraction as F

import pytest

from tropnev import (
    BOTTOM,
    CapExceededError,
    DomainError,
    PLFunction,
    TropMatrix,
    casoratian,
    casoratian_at,
    has_live_permutation,
    is_entire,
    is_regular,
    mat_oplus,
    mat_otimes,
    optimal_assignment,
    trop_det,
)
from tropnev.generators import random_entire, random_rational

from oracles import brute_casoratian_at, brute_det

B = BOTTOM


def rand_matrix(rng, n, p_bottom=0.2):
    return [[B if rng.random() < p_bottom else F(rng.randint(-20, 20), rng.choice([1, 2, 3])) for _ in range(n)] for _ in range(n)]


def test_identity_and_idempotency():
    a = TropMatrix([[1, 2], [3, 4]])
    assert mat_otimes(TropMatrix.identity(2), a) == a
    assert mat_otimes(a, TropMatrix.identity(2)) == a
    assert mat_oplus(a, a) == a


def test_small_product():
    i = TropMatrix([[0, B], [B, 0]])
    assert mat_otimes(i, TropMatrix([[1, 2], [3, 4]])) == TropMatrix([[1, 2], [3, 4]])
    p = mat_otimes(TropMatrix([[0, 1], [2, B]]), TropMatrix([[1, B], [0, 3]]))
    assert p == TropMatrix([[1, 4], [3, B]])


def test_det_examples():
    assert trop_det(TropMatrix([[1, B], [B, 1]])) == 2
    assert trop_det(TropMatrix([[0, 0], [0, 0]])) == 0
    assert trop_det(TropMatrix([[B, B], [0, 0]])) is B


def test_det_matches_enumeration_6x6():
    rng = random.Random(6)
    for _ in range(20):
        m = rand_matrix(rng, 6)
        assert trop_det(m) == brute_det(m)


def test_optimal_assignment_realizes_det():
    rng = random.Random(11)
    for _ in range(50):
        m = rand_matrix(rng, rng.randint(1, 5))
        perm = optimal_assignment(m)
        if perm is None:
            assert brute_det(m) is B
        else:
            assert sorted(perm) == list(range(len(m)))
            assert sum(m[i][perm[i]] for i in range(len(m))) == brute_det(m)


def test_regularity_examples():
    assert not is_regular(TropMatrix([[B, B], [0, 1]]))
    assert is_regular(TropMatrix([[0, 0], [0, 0]]))
    assert not is_regular(TropMatrix([[1, B], [B, B]]))


def test_regularity_predicates_differ():
    m = TropMatrix([[0, B], [0, B]])
    assert is_regular(m)
    assert not has_live_permutation(m)
    assert trop_det(m) is B


def test_matrix_validation():
    with pytest.raises(DomainError):
        TropMatrix([[1, 2]])
    with pytest.raises(DomainError):
        mat_oplus(TropMatrix([[1]]), TropMatrix([[1, 2], [3, 4]]))


def test_casoratian_single_function():
    f = random_rational(3)
    assert casoratian([f], 1) == f


@pytest.mark.parametrize("c", [F(1), F(5, 2), F(-2)])
def test_casoratian_two_affine(c):
    s0, b0, s1, b1 = F(2), F(1), F(-1, 2), F(3)
    f0, f1 = PLFunction.affine(s0, b0), PLFunction.affine(s1, b1)
    shift = c * max(s0, s1) if c > 0 else c * min(s0, s1)
    assert casoratian([f0, f1], c) == PLFunction.affine(s0 + s1, b0 + b1 + shift)


def test_casoratian_matches_pointwise_on_triples():
    rng = random.Random(3)
    for t in range(10):
        fs = [random_rational(100 * t + k, size=3) for k in range(3)]
        c = F(rng.randint(1, 4), rng.choice([1, 2])) * rng.choice([1, -1])
        sym = casoratian(fs, c)
        for _ in range(100):
            x = F(rng.randint(-400, 400), rng.choice([1, 3, 4]))
            assert sym(x) == casoratian_at(fs, c, x) == brute_casoratian_at(fs, c, x)


def test_casoratian_of_entire_is_entire():
    rng = random.Random(9)
    for _ in range(10):
        fs = [random_entire(rng, 3) for _ in range(3)]
        assert is_entire(casoratian(fs, 1))


def test_casoratian_at_eight_functions_fast():
    rng = random.Random(8)
    fs = [random_entire(rng, 3) for _ in range(8)]
    t = time.perf_counter()
    v = casoratian_at(fs, 1, F(1, 2))
    assert time.perf_counter() - t < 1.0
    assert v == brute_casoratian_at(fs, 1, F(1, 2))


def test_casoratian_cap_and_shift():
    fs = [PLFunction.affine(k, 0) for k in range(7)]
    with pytest.raises(CapExceededError):
        casoratian(fs, 1)
    with pytest.raises(DomainError):
        casoratian(fs[:2], 0)
    with pytest.raises(DomainError):
        casoratian_at(fs[:2], 0, 1)


def test_windowed_casoratian_shrinks_window():
    f = PLFunction.from_points([(0, 0)], 0, 1, window=(-10, 10))
    g = PLFunction.from_points([(1, 0)], 0, 2, window=(-10, 10))
    C = casoratian([f, g], 2)
    assert C.window == (F(-10), F(8))
    assert C(3) == casoratian_at([f, g], 2, 3)
