"""Asymptotic constant tables: u/v/beta recursions, the transseries
corrections, and the Darboux coefficient approximation."""

import math

import pytest

from cubicmaps.asympt import (u_coeffs, v_coeffs, beta_recursion,
                              beta_from_uv, beta_from_genus, beta_ode_check,
                              mu_coeffs, nu_coeffs, asymptotic_ratio_u,
                              stokes_estimate, stokes_report, map_constants,
                              darboux_estimate, darboux_compare,
                              build_const_tables, A_CONST)
from cubicmaps.exact import Q, QRoot3


def test_u_seeds():
    assert u_coeffs(2) == [Q(1), Q(-1, 48), Q(-49, 4608)]


def test_v_seeds():
    assert v_coeffs(2) == [QRoot3(0, -1), QRoot3(Q(1, 4)),
                           QRoot3(0, Q(5, 48))]


def test_beta_seeds():
    assert beta_recursion(3) == [QRoot3(-36), QRoot3(0, 6), QRoot3(Q(13, 3)),
                                 QRoot3(0, Q(5, 2))]


def test_beta_parity():
    # rational at even index, sqrt(3)-multiple at odd index
    for g, b in enumerate(beta_recursion(16)):
        assert (b.a == 0) == (g % 2 == 1), g


def test_beta_three_routes_agree(table):
    rec = beta_recursion(12)
    uv = beta_from_uv(12)
    assert rec == uv
    for g in range(2, 13):
        assert beta_from_genus(g, table) == rec[g], g


def test_beta_ode_check():
    rep = beta_ode_check(12)
    assert rep["status"] == "pass"
    assert rep["ode_residual_zero"] and rep["uv_identity_match"]
    assert rep["first_failure"] is None


def test_transseries_seeds():
    assert mu_coeffs(1) == [QRoot3(1), QRoot3(0, Q(-5, 192))]
    assert nu_coeffs(1) == [QRoot3(1), QRoot3(0, Q(-1, 12))]


def test_ratio_u_improves_with_more_corrections():
    errs = [abs(asymptotic_ratio_u(12, L) - 1) for L in range(4)]
    assert errs[1] < errs[0] and errs[2] < errs[1] and errs[3] < errs[2]
    assert errs[3] < 1e-5


def test_stokes_estimate_stabilizes():
    a = stokes_estimate(20, 3)
    b = stokes_estimate(24, 3)
    assert a != 0 and b != 0
    assert abs(a - b) < 1e-3 * abs(b)


def test_stokes_report_shape():
    rep = stokes_report([10, 14], 2)
    assert [row["g"] for row in rep["trajectory"]] == [10, 14]
    assert rep["l_max"] == 2


def test_map_constants_genus_one():
    row = map_constants(1)[0]
    assert row["t_variant_A"] == pytest.approx(1 / 24)
    assert row["t_variant_B"] == pytest.approx(-1 / 24)
    assert row["p_index"] == 1
    assert row["p"] == pytest.approx(0.5)


def test_map_constants_p_only_at_odd_genus():
    rows = map_constants(4)
    assert [r["p_index"] for r in rows] == [1, None, 2, None]


def test_darboux_ratio_approaches_one(table):
    r40 = darboux_compare(2, 40, table)
    r80 = darboux_compare(2, 80, table)
    assert abs(r80 - 1) < abs(r40 - 1)
    assert 0.5 < r80 < 1.5


def test_darboux_estimate_matches_compare(table):
    n, g = 30, 2
    from cubicmaps.genus import coefficients
    exact = coefficients(g, n, table)[n - 1]
    est = darboux_estimate(g, n)
    assert float(exact) / est == pytest.approx(darboux_compare(g, n, table))


def test_darboux_estimate_saturates_cleanly():
    assert darboux_estimate(2, 10 ** 4) == math.inf


def test_build_const_tables_bundle():
    tabs = build_const_tables(6, 4)
    assert len(tabs.u) >= 7 and len(tabs.beta) == 7
    assert len(tabs.mu) == 5 and len(tabs.nu) == 5
    assert tabs.beta == beta_recursion(6)
    assert set(tabs.conventions) == {
        "v_exponent_grid", "v_minus_one", "u_half_integer",
        "beta_series_scaling"}


def test_growth_base_matches_singularity():
    # the branch point of s(z): eta(s_c) = 0 at s_c = (3 - sqrt 3)/6,
    # so z_c = s(1-s)(1-2s)/2 there; 1/z_c is the Darboux growth base
    s_c = QRoot3(Q(1, 2), Q(-1, 6))
    eta = QRoot3(1) - 6 * s_c + 6 * s_c * s_c
    assert not eta
    z_c = s_c * (1 - s_c) * (1 - 2 * s_c) * Q(1, 2)
    assert z_c == QRoot3(0, Q(1, 36))          # sqrt(3)/36
    assert float(QRoot3(1) / z_c) == pytest.approx(12 * math.sqrt(3))
    assert A_CONST == pytest.approx(8 * math.sqrt(3) / 5)
