"""Ring/field axioms and serialization round-trips for the exact kernel."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicmaps.exact import (Q, QRoot3, SQRT3, qq, q_str, q_parse, qr3_str,
                             qr3_parse, NPolynomial, npoly_shift, RatFunc,
                             TruncLaurent, series_compose, DivByZeroSeries,
                             SqrtDomain, ZeroDenominator)

rationals = st.builds(Q, st.integers(-30, 30), st.integers(1, 12))
qroot3s = st.builds(QRoot3, rationals, rationals)
npolys = st.builds(NPolynomial, st.lists(rationals, max_size=6))


# ---- rationals ----

def test_qq_forms():
    assert qq(2, 3) == Q(2, 3)
    assert qq("2/3") == Q(2, 3)
    assert qq("-7") == Q(-7)
    assert qq(5) == Q(5)


@given(rationals)
def test_q_str_round_trip(x):
    assert q_parse(q_str(x)) == x


def test_q_str_integer_has_no_slash():
    assert q_str(Q(14, 7)) == "2"
    assert q_str(Q(-3, 4)) == "-3/4"


# ---- QRoot3 ----

@given(qroot3s, qroot3s, qroot3s)
def test_qroot3_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(qroot3s)
def test_qroot3_division_round_trip(x):
    if not x:
        return
    assert (QRoot3(1) / x) * x == QRoot3(1)
    assert x / x == QRoot3(1)


@given(qroot3s, qroot3s)
def test_qroot3_conj_is_multiplicative(x, y):
    assert (x * y).conj() == x.conj() * y.conj()
    # norm x * conj(x) is rational
    assert (x * x.conj()).is_rational()


def test_sqrt3_squares_to_three():
    assert SQRT3 * SQRT3 == QRoot3(3)
    assert float(SQRT3) == pytest.approx(3 ** 0.5)


@given(qroot3s)
def test_qr3_serialization_round_trip(x):
    assert qr3_parse(qr3_str(x)) == x


def test_qroot3_mixed_scalar_arithmetic():
    x = QRoot3(Q(1, 2), Q(3))
    assert x + 1 == QRoot3(Q(3, 2), Q(3))
    assert 2 * x == x * 2 == QRoot3(1, 6)
    assert 1 - x == QRoot3(Q(1, 2), Q(-3))
    assert (x / Q(1, 2)) == QRoot3(1, 6)


# ---- dense polynomials ----

@given(npolys, npolys, npolys)
def test_npoly_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == NPolynomial()


@given(npolys, npolys)
def test_npoly_divmod_property(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree() < b.degree()


@given(npolys, npolys)
def test_npoly_deriv_product_rule(a, b):
    assert (a * b).deriv() == a.deriv() * b + a * b.deriv()


@given(npolys, rationals, rationals)
def test_npoly_shift_evaluates_correctly(p, c, v):
    assert npoly_shift(p, c)(v) == p(v + c)


@given(npolys)
def test_npoly_list_round_trip(p):
    assert NPolynomial.from_list(p.to_list()) == p


def test_npoly_valuation():
    p = NPolynomial([0, 0, 5, 1])
    assert p.val_order() == 2
    assert p.shift_down(2) == NPolynomial([5, 1])


# ---- rational functions ----

def test_ratfunc_cancels_common_factors():
    s = NPolynomial([0, 1])
    one_m_s = NPolynomial([1, -1])
    f = RatFunc(s * one_m_s, one_m_s * one_m_s)
    assert f == RatFunc(s, one_m_s)


@given(st.lists(rationals, min_size=1, max_size=4),
       st.lists(rationals, min_size=1, max_size=4))
def test_ratfunc_field_ops(nc, dc):
    a = RatFunc(NPolynomial(nc))
    b = RatFunc(NPolynomial(dc))
    if not b.is_zero():
        assert (a / b) * b == a
    assert a + b - b == a
    assert (a * b).deriv() == a.deriv() * b + a * b.deriv()


def test_ratfunc_zero_denominator_raises():
    with pytest.raises(ZeroDenominator):
        RatFunc(NPolynomial([1]), NPolynomial())


def test_ratfunc_serialization_round_trip():
    f = RatFunc(NPolynomial([0, 2, -8, 4]), NPolynomial([1, -5, 8, -4]))
    assert RatFunc.from_dict(f.to_dict()) == f


def test_ratfunc_pole_order():
    s2 = NPolynomial([0, 0, 1])
    assert RatFunc(NPolynomial([1]), s2).pole_order_at_zero() == 2
    assert RatFunc(s2, NPolynomial([1, 1])).pole_order_at_zero() == 0


def test_ratfunc_eval_series_matches_expansion():
    # 1/(1-s) = 1 + s + s^2 + ...
    f = RatFunc(NPolynomial([1]), NPolynomial([1, -1]))
    s = TruncLaurent.monomial(Q(1), 1, 6)
    got = f.eval_series(s)
    assert [got.coefficient(k) for k in range(6)] == [Q(1)] * 6


# ---- truncated Laurent series ----

def lau(val, coeffs, trunc):
    return TruncLaurent(val, [Q(c) for c in coeffs], trunc)


def test_series_mul_explicit():
    a = lau(-1, [1, 2], 1)        # z^-1 + 2, known through z^0
    b = lau(0, [3, 0, 1], 3)      # 3 + z^2
    p = a * b
    assert p.trunc == 1           # limited by a's truncation
    assert p.coefficient(-1) == 3
    assert p.coefficient(0) == 6


@given(st.lists(rationals, min_size=1, max_size=5),
       st.lists(rationals, min_size=1, max_size=5),
       st.integers(-3, 3))
def test_series_division_round_trip(ac, bc, v):
    a = TruncLaurent(v, ac, v + len(ac))
    b = TruncLaurent(0, bc, len(bc))
    if b.is_zero():
        return
    q = (a * b) / b
    assert q == a.clip(q.trunc)


def test_series_divide_by_zero_raises():
    with pytest.raises(DivByZeroSeries):
        TruncLaurent.const(Q(1), 3) / TruncLaurent.zero(3)


def test_sqrt1_round_trip():
    s = lau(0, [1, -6, 6, 0, 0, 0, 0, 0], 8)
    r = s.sqrt1()
    assert (r * r) == s
    assert r.coefficient(1) == Q(-3)


def test_sqrt1_domain_errors():
    with pytest.raises(SqrtDomain):
        TruncLaurent.monomial(Q(1), 1, 4).sqrt1()
    with pytest.raises(SqrtDomain):
        lau(0, [2, 1, 0, 0], 4).sqrt1()


def test_series_diff_and_shift():
    s = lau(-2, [5, 0, 0, 7], 2)  # 5z^-2 + 7z
    d = s.diff()
    assert d.coefficient(-3) == -10
    assert d.coefficient(0) == 7
    assert s.shift(2).coefficient(0) == 5


def test_series_compose_geometric():
    # 1/(1-u) at u = z + z^2: coefficients are Fibonacci-like sums
    outer = lau(0, [1, 1, 1, 1, 1, 1], 6)
    inner = lau(1, [1, 1, 0, 0, 0], 6)
    c = series_compose(outer, inner)
    assert [c.coefficient(k) for k in range(5)] == [1, 1, 2, 3, 5]


@given(st.lists(rationals, max_size=5), st.integers(-4, 4))
def test_series_map_round_trip(cs, v):
    s = TruncLaurent(v, cs, v + len(cs))
    assert TruncLaurent.from_map(s.to_map()) == s


def test_series_map_handles_qroot3_entries():
    s = TruncLaurent(0, [QRoot3(1, Q(1, 2))], 1)
    assert TruncLaurent.from_map(s.to_map()) == s
