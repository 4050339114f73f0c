"""Exact pfaffian machinery: recursive expansion, the determinant square,
bordered expansion, and the formal derivative rule."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicmaps.oracle.pfaffian import (AntisymMatrix, OddDimension, pfaffian,
                                       pfaffian_of, det_exact, random_antisym,
                                       pfaffian_square_check,
                                       pfaffian_quadratic_identity,
                                       pfaffian_derivative_rule, FormalSum)
from cubicmaps.exact import Q


def antisym(upper):
    """Build an AntisymMatrix from its strict upper triangle, row by row."""
    dim = len(upper) + 1
    rows = [[Q(0)] * dim for _ in range(dim)]
    for i, row in enumerate(upper):
        for off, v in enumerate(row):
            j = i + 1 + off
            rows[i][j] = Q(v)
            rows[j][i] = -Q(v)
    return AntisymMatrix(rows)


def test_two_by_two():
    assert pfaffian(antisym([[5]])) == 5


def test_four_by_four_cofactor_form():
    a = antisym([[1, 2, 3], [4, 5], [6]])
    # a12 a34 - a13 a24 + a14 a23
    assert pfaffian(a) == 1 * 6 - 2 * 5 + 3 * 4


def test_empty_matrix():
    assert pfaffian(AntisymMatrix([])) == 1


def test_zero_matrix():
    assert pfaffian(antisym([[0, 0, 0], [0, 0], [0]])) == 0


def test_odd_dimension_rejected():
    with pytest.raises(OddDimension):
        pfaffian(antisym([[1, 2], [3]]))


def test_constructor_rejects_asymmetry():
    with pytest.raises((ValueError, AssertionError)):
        AntisymMatrix([[Q(0), Q(1)], [Q(1), Q(0)]])
    with pytest.raises((ValueError, AssertionError)):
        AntisymMatrix([[Q(1), Q(1)], [Q(-1), Q(0)]])


def test_repeated_label_vanishes():
    a = antisym([[1, 2, 3], [4, 5], [6]])
    assert pfaffian_of(lambda i, j: a[i, j], [0, 1, 1, 2]) == 0


@given(st.integers(0, 10 ** 6), st.sampled_from([2, 4, 6, 8]))
@settings(max_examples=30, deadline=None)
def test_square_is_determinant(seed, dim):
    a = random_antisym(dim, random.Random(seed))
    assert pfaffian(a) ** 2 == det_exact(a.rows)


def test_direct_sum_multiplies():
    rng = random.Random(7)
    a = random_antisym(4, rng)
    b = random_antisym(2, rng)
    assert pfaffian(AntisymMatrix.direct_sum(a, b)) == \
        pfaffian(a) * pfaffian(b)


def test_square_check_report():
    rep = pfaffian_square_check(trials=24)
    assert rep["status"] == "passed"
    assert rep["first_failure"] is None


def test_quadratic_identity():
    for m in (1, 2):
        for n in (1, 2):
            rep = pfaffian_quadratic_identity(m, n)
            assert rep["status"] == "passed", (m, n)


def test_quadratic_identity_bounds():
    with pytest.raises(ValueError):
        pfaffian_quadratic_identity(4, 1)


def test_derivative_rule():
    for size in (2, 4, 6):
        for k in (1, 2, 3):
            rep = pfaffian_derivative_rule(k, size)
            assert rep["status"] == "passed", (size, k)


def test_derivative_rule_bounds():
    with pytest.raises(OddDimension):
        pfaffian_derivative_rule(1, 3)
    with pytest.raises(ValueError):
        pfaffian_derivative_rule(4, 4)


# ---- the formal moment algebra underneath the derivative rule ----

def test_symbol_normalization():
    assert FormalSum.symbol(3, 3).is_zero()
    assert FormalSum.symbol(5, 2) == -FormalSum.symbol(2, 5)


def test_entry_derivative_is_leibniz():
    x = FormalSum.symbol(1, 2)
    y = FormalSum.symbol(3, 4)
    k = 2
    lhs = (x * y).d_k(k)
    rhs = x.d_k(k) * y + x * y.d_k(k)
    assert lhs == rhs


def test_entry_derivative_rule_on_one_symbol():
    # d_k carries the 2k scaling: d_k mu_{i,j} = mu_{i+k,j} + mu_{i,j+k}
    assert FormalSum.symbol(1, 2).d_k(3) == \
        FormalSum.symbol(4, 2) + FormalSum.symbol(1, 5)
