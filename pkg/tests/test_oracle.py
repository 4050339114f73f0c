"""Matrix-ensemble oracle: pairing histograms, the graded log-partition
series, and the identity verifiers built on top of them.

The histogram engine is the one component with two interchangeable
backends (compiled kernel / pure numpy); they are required to agree
bit-for-bit on every shape tested here.
"""

import math

import pytest
from scipy import integrate

from cubicmaps.oracle import (wick_moment, wick_loop_histogram,
                              active_backend, zN_graded, log_zN,
                              map_series_oracle, genus_split, mehta_ratio,
                              verify_virasoro, verify_bkp,
                              verify_y_reductions)
from cubicmaps.oracle.verify import _mehta_ratio_product
from cubicmaps.oracle.wick import _HAVE_NUMBA
from cubicmaps.genus import SizeLimit
from cubicmaps.exact import Q, NPolynomial


def double_factorial(n):
    return math.prod(range(n, 0, -2))


# ---- pairing histograms ----

def test_trace_square_moment():
    assert wick_moment([2]) == NPolynomial([0, 1, 1])


def test_trace_cube_pair_moment():
    assert wick_moment([3, 3]) == NPolynomial([0, 42, 54, 24])


def test_resolvable_first_moments():
    assert wick_moment([1, 1]) == NPolynomial([0, 2])
    assert wick_moment([]) == NPolynomial([1])


def test_odd_moments_vanish():
    for ks in ([1], [3], [2, 1], [3, 3, 3]):
        assert wick_moment(ks).is_zero()


def test_histogram_mass_is_matchings_times_resolutions():
    for ks in ([3, 3], [2, 2, 2], [1, 1, 1, 1], [4, 4]):
        n = sum(ks)
        hist = wick_loop_histogram(ks)
        assert sum(hist) == double_factorial(n - 1) * 2 ** (n // 2)


def test_symmetry_reduction_matches_brute_force():
    shapes = ([3, 3], [2, 2], [4, 4], [1, 1, 1, 1], [2, 2, 2],
              [3, 3, 1, 1], [2, 2, 2, 2])
    for ks in shapes:
        fast = wick_loop_histogram(ks, reduce_symmetry=True)
        brute = wick_loop_histogram(ks, reduce_symmetry=False)
        assert fast == brute, ks


def test_block_order_is_irrelevant():
    a = wick_loop_histogram([3, 3, 1, 1])
    assert wick_loop_histogram([1, 3, 1, 3]) == a
    assert wick_loop_histogram([1, 1, 3, 3]) == a


@pytest.mark.skipif(not _HAVE_NUMBA, reason="compiled backend unavailable")
def test_backends_agree():
    for ks in ([3, 3, 1, 1], [2, 2, 2], [4, 2, 1, 1]):
        a = wick_loop_histogram(ks, backend="numba")
        b = wick_loop_histogram(ks, backend="numpy")
        assert a == b, ks


def test_env_flag_selects_numpy_backend(monkeypatch):
    monkeypatch.setenv("CUBICMAPS_NO_NUMBA", "1")
    assert active_backend() == "numpy"
    assert wick_loop_histogram([3, 3]) == [0, 42, 54, 24, 0, 0, 0]
    monkeypatch.setenv("CUBICMAPS_NO_NUMBA", "0")
    if _HAVE_NUMBA:
        assert active_backend() == "numba"


def test_size_limit():
    with pytest.raises(SizeLimit):
        wick_loop_histogram([3] * 6 + [2])


# ---- graded series over the first three times ----

def test_log_series_low_coefficients():
    y = log_zN(6)
    assert y.coeff((0, 1, 0)) == NPolynomial([0, Q(1, 4), Q(1, 4)])
    assert y.coeff((2, 0, 0)) == NPolynomial([0, Q(1, 4)])
    assert y.coeff((0, 0, 2)) == NPolynomial([0, Q(7, 12), Q(3, 4), Q(1, 3)])


def test_log_exp_round_trip():
    z = zN_graded(5)
    assert z.log().exp() == z


def test_derivative_lowers_by_marking():
    # [e] of dt(k) is (e_k + 1) times [e + delta_k]
    y = log_zN(6)
    d3 = y.dt(3)
    assert d3.coeff((0, 0, 1)) == y.coeff((0, 0, 2)).scale(2)


def test_map_series_from_oracle():
    series = map_series_oracle(4)
    assert genus_split(2, series[2]) == [4, 9, 7]
    assert genus_split(4, series[4]) == [32, 118, 202, 128]
    assert series[1].is_zero() and series[3].is_zero()


def test_genus_split_rejects_bad_input():
    assert genus_split(1, NPolynomial()) == []
    with pytest.raises(ValueError):
        genus_split(2, NPolynomial([0, 0, 0, 0, 1]))   # degree past N^3
    with pytest.raises(ValueError):
        genus_split(2, NPolynomial([0, Q(1, 2)]))      # non-integer count


# ---- normaliser ratio ----

def test_mehta_ratio_polynomial():
    assert mehta_ratio() == NPolynomial([0, -1, 1])
    assert mehta_ratio(7) == 42
    for n in range(2, 13):
        assert _mehta_ratio_product(n) == n * (n - 1), n


def test_normaliser_against_quadrature():
    # closed form (1/N!) 2^(N/2+N(N-1)/4) (2pi)^(N/2) prod Gamma(1+j/2)/Gamma(3/2)
    def closed(n):
        acc = 2.0 ** (n / 2 + n * (n - 1) / 4) * (2 * math.pi) ** (n / 2)
        acc /= math.factorial(n)
        for j in range(1, n + 1):
            acc *= math.gamma(1 + j / 2) / math.gamma(1.5)
        return acc

    one_dim, _ = integrate.quad(lambda x: math.exp(-x * x / 4),
                                -math.inf, math.inf)
    assert one_dim == pytest.approx(closed(1), rel=1e-9)

    # the closed form divides by N!; quadrature over all of R^2 does not
    two_dim, _ = integrate.dblquad(
        lambda y, x: abs(x - y) * math.exp(-(x * x + y * y) / 4),
        -math.inf, math.inf, -math.inf, math.inf)
    assert two_dim == pytest.approx(2 * closed(2), rel=1e-6)


# ---- identity verifiers ----

def test_virasoro_passes():
    rep = verify_virasoro(6)
    assert rep["status"] == "passed"
    assert rep["first_failure"] is None
    assert rep["d2_constant_term"] == ["0", "1/4", "1/4"]


def test_bkp_proof_variant_passes():
    rep = verify_bkp(6)
    assert rep["status"] == "passed"
    assert rep["variant"] == "proof"
    stmt = rep["details"]["statement"]
    assert stmt["status"] == "failed"
    assert stmt["first_failure"]["monomial"] == [0, 0, 0]


def test_y_reductions_pass_to_low_order():
    rep = verify_y_reductions(2)
    assert rep["status"] == "passed"
    assert rep["first_failure"] is None
