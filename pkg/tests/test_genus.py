"""Genus recursion: solved psi-vectors, count tables, residual re-checks,
cache behaviour and limits."""

import io

import pytest

from cubicmaps.genus import (GenusTable, solve_genus, coefficients,
                             coefficients_csv, residual_corollary_zseries,
                             residual_master, MissingDependency, SizeLimit,
                             MAX_ORDER)
from cubicmaps.algframe import PsiVector
from cubicmaps.exact import Q

# rooted-map counts by genus, n = 1..5 (independently cross-checked
# against a matrix-integral pairing count in the oracle suite)
COUNTS = {
    0: [4, 32, 336, 4096, 54912],
    1: [9, 118, 1773, 28650, 484578],
    2: [7, 202, 4900, 112046, 2490132],
    3: [0, 128, 6786, 249416, 7820190],
}


def test_genus2_psi_vector(table):
    assert table.psi(2) == PsiVector(
        [(0, Q(23, 12)), (1, Q(-3)), (2, Q(13, 12))])


def test_top_index_growth(table):
    for g in range(2, 13):
        assert table.psi(g).top_index() <= 5 * g - 8


def test_count_tables(table):
    for g, row in COUNTS.items():
        assert coefficients(g, 5, table) == row


def test_counts_are_nonnegative_integers(table):
    for g in range(9):
        for c in coefficients(g, 8, table):
            assert c.denominator == 1 and c >= 0


def test_corollary_residual_vanishes(table):
    for g in (2, 3, 4):
        r = residual_corollary_zseries(g, 12, table)
        assert r.is_zero()


def test_master_equation_residual(table):
    rep = residual_master(4, 6, table)
    assert rep["status"] == "pass"
    assert rep["vk_closed_form_match"] is True


def test_require_unsolved_raises():
    t = GenusTable()
    with pytest.raises(MissingDependency):
        t.require(5)


def test_solve_needs_lower_genera():
    t = GenusTable()
    with pytest.raises(MissingDependency):
        solve_genus(4, t)


def test_order_limit():
    t = GenusTable()
    with pytest.raises(SizeLimit):
        coefficients(0, MAX_ORDER + 1, t)


def test_genus_limit():
    with pytest.raises(SizeLimit):
        GenusTable().ensure(65)


def test_csv_layout(table):
    buf = io.StringIO()
    coefficients_csv(table, [2, 3], 3, buf)
    assert buf.getvalue() == (
        "g,n,count\n"
        "2,1,7\n2,2,202\n2,3,4900\n"
        "3,1,0\n3,2,128\n3,3,6786\n")


def test_cache_round_trip_is_byte_identical(tmp_path):
    a = GenusTable(cache_dir=str(tmp_path / "a")).ensure(3)
    b = GenusTable(cache_dir=str(tmp_path / "b")).ensure(3)
    for g in (2, 3):
        pa = a.cache_path(g)
        pb = b.cache_path(g)
        with open(pa, "rb") as fa, open(pb, "rb") as fb:
            assert fa.read() == fb.read()


def test_cache_load_skips_resolve(tmp_path):
    cache = str(tmp_path)
    GenusTable(cache_dir=cache).ensure(3)
    t = GenusTable(cache_dir=cache)
    t.ensure(3)
    assert t.psi(3) == GenusTable().ensure(3).psi(3)
    assert t.require(3)["provenance"] in ("solved", "cache")
