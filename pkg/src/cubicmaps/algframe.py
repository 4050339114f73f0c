"""The algebraic frame: the substitution s(z), elements of Q(s)[sqrt(eta)]
with eta = 1 - 6s + 6s^2, and the psi-ladder with its product/derivation
rules.

Everything downstream (genus recursion, residual checks, coefficient
extraction) lives in this frame: closed forms are AlgElem values
a(s) + b(s)*sqrt(eta); solved genus data lives in the psi basis
    psi_i = eta^(-(i/2+1))            (i even)
    psi_i = (1-2s) * eta^(-(i/2+1))   (i odd; half-integer exponent)
and z-expansions come from composing with the series s(z) defined by
z = s(1-s)(1-2s)/2, s(0) = 0.
"""

import math

from .exact import (Q, TruncLaurent, NPolynomial, RatFunc, q_str, q_parse,
                    F_ETA)
from .exact.ratfunc import ONE_P, P

__all__ = ["AlgElem", "PsiVector", "NotInSpan", "EssentialPole", "s_of_z",
           "psi_product", "apply_D", "theta_op", "alg_to_psi",
           "alg_to_zseries", "base_series", "psi_to_alg", "psi_basis_alg",
           "D_FACTOR", "ETA_PRIME"]


class NotInSpan(ValueError):
    """Element is not a rational combination of the psi ladder."""


class EssentialPole(ValueError):
    """Denominator valuation could not be cleared during z-expansion."""


# 6 s (1-s)(1-2s) = 6s - 18s^2 + 12s^3 : the numerator of D's coefficient
_DNUM = P([0, 6, -18, 12])
D_FACTOR = RatFunc(_DNUM, F_ETA, reduce=False)   # D = D_FACTOR * d/ds
ETA_PRIME = P([-6, 12])
_ETA_RF = RatFunc(F_ETA, ONE_P, reduce=False)
# s(1-s)(1-2s) = 2z as a polynomial in s
TWOZ_P = P([0, 1, -3, 2])


class AlgElem:
    """a(s) + b(s)*sqrt(eta) with rational-function parts."""

    __slots__ = ("even", "odd")

    def __init__(self, even=None, odd=None):
        self.even = even if even is not None else RatFunc.zero()
        self.odd = odd if odd is not None else RatFunc.zero()

    @classmethod
    def const(cls, c):
        return cls(RatFunc.const(c), None)

    @classmethod
    def from_ratfunc(cls, rf):
        return cls(rf, None)

    def is_zero(self):
        return self.even.is_zero() and self.odd.is_zero()

    def __eq__(self, other):
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.even == other.even and self.odd == other.odd

    def __repr__(self):
        return "AlgElem(even=%r, odd=%r)" % (self.even, self.odd)

    def __neg__(self):
        return AlgElem(-self.even, -self.odd)

    def __add__(self, other):
        return AlgElem(self.even + other.even, self.odd + other.odd)

    def __sub__(self, other):
        return AlgElem(self.even - other.even, self.odd - other.odd)

    def __mul__(self, other):
        a1, b1, a2, b2 = self.even, self.odd, other.even, other.odd
        return AlgElem(a1 * a2 + b1 * b2 * _ETA_RF, a1 * b2 + a2 * b1)

    def mul_rf(self, rf):
        return AlgElem(self.even * rf, self.odd * rf)

    def scale(self, c):
        return AlgElem(self.even.scale(c), self.odd.scale(c))

    def conj(self):
        return AlgElem(self.even, -self.odd)

    def __truediv__(self, other):
        # rationalize: multiply by the conjugate over the norm
        n = other.even * other.even - other.odd * other.odd * _ETA_RF
        return (self * other.conj()).mul_rf(RatFunc.const(1) / n)

    def to_dict(self):
        return {"even": self.even.to_dict(), "odd": self.odd.to_dict()}

    @classmethod
    def from_dict(cls, d):
        return cls(RatFunc.from_dict(d["even"]), RatFunc.from_dict(d["odd"]))


class PsiVector:
    """Finite rational combination of psi_i; no explicit zeros stored."""

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        e = {}
        if entries:
            for i, c in (entries.items() if isinstance(entries, dict)
                         else entries):
                c = Q(c)
                if c:
                    i = int(i)
                    e[i] = e.get(i, Q(0)) + c
                    if not e[i]:
                        del e[i]
        self.entries = e

    def is_zero(self):
        return not self.entries

    def top_index(self):
        return max(self.entries) if self.entries else -1

    def get(self, i):
        return self.entries.get(i, Q(0))

    def items(self):
        return sorted(self.entries.items())

    def __eq__(self, other):
        if not isinstance(other, PsiVector):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return "PsiVector(%s)" % (", ".join(
            "psi%d: %s" % (i, q_str(c)) for i, c in self.items()) or "0")

    def __add__(self, other):
        e = dict(self.entries)
        for i, c in other.entries.items():
            v = e.get(i, Q(0)) + c
            if v:
                e[i] = v
            elif i in e:
                del e[i]
        out = PsiVector()
        out.entries = e
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Q(c)
        out = PsiVector()
        if c:
            out.entries = {i: c * v for i, v in self.entries.items()}
        return out

    def to_pairs(self):
        return [[str(i), q_str(c)] for i, c in self.items()]

    @classmethod
    def from_pairs(cls, pairs):
        return cls([(int(i), q_parse(c)) for i, c in pairs])


def psi_product(i, j):
    """psi_i * psi_j in the ladder: chi psi_{i+j+2} + (1-chi) psi_{i+j},
    chi = 1/3 when both indices are odd, otherwise 1."""
    assert i >= 0 and j >= 0
    if i % 2 == 1 and j % 2 == 1:
        return PsiVector([(i + j + 2, Q(1, 3)), (i + j, Q(2, 3))])
    return PsiVector([(i + j + 2, 1)])


def psi_vec_mul(u, v):
    """Bilinear extension of psi_product."""
    out = PsiVector()
    for i, a in u.entries.items():
        for j, b in v.entries.items():
            out = out + psi_product(i, j).scale(a * b)
    return out


def apply_D(x):
    """The derivation D = 6z d/dz, on either representation."""
    if isinstance(x, PsiVector):
        out = PsiVector()
        acc = out.entries
        for i, c in x.entries.items():
            if i % 2 == 0:
                rule = ((i + 4, (i + 2) * c), (i + 2, (i + 2) * c),
                        (i, -2 * (i + 2) * c))
            else:
                rule = ((i + 4, (i + 2) * c), (i + 2, i * c),
                        (i, -2 * (i + 1) * c))
            for k, v in rule:
                if v:
                    w = acc.get(k, Q(0)) + v
                    if w:
                        acc[k] = w
                    elif k in acc:
                        del acc[k]
        return out
    # AlgElem: D = D_FACTOR * d/ds with the sqrt(eta) product rule
    a, b = x.even, x.odd
    ev = D_FACTOR * a.deriv()
    half_log = RatFunc(ETA_PRIME, F_ETA.scale(2))   # eta' / (2 eta)
    od = D_FACTOR * (b.deriv() + b * half_log)
    return AlgElem(ev, od)


def theta_op(i, x):
    """z^i/i! d^i/dz^i, as the falling factorial binomial(z d/dz, i)
    with z d/dz = D/6."""
    assert i >= 0
    y = x
    for k in range(i):
        y = apply_D(y).scale(Q(1, 6)) - y.scale(k)
    if i > 1:
        y = y.scale(Q(1, math.factorial(i)))
    return y


def psi_basis_alg(i):
    """psi_i as an AlgElem."""
    if i % 2 == 0:
        den = _eta_pow(i // 2 + 1)
        return AlgElem(RatFunc(ONE_P, den), None)
    den = _eta_pow((i + 3) // 2)
    return AlgElem(None, RatFunc(P([1, -2]), den))


def _eta_pow(k):
    p = ONE_P
    for _ in range(k):
        p = p * F_ETA
    return p


def psi_to_alg(v):
    ev = RatFunc.zero()
    od = RatFunc.zero()
    for i, c in v.entries.items():
        b = psi_basis_alg(i)
        if i % 2 == 0:
            ev = ev + b.even.scale(c)
        else:
            od = od + b.odd.scale(c)
    return AlgElem(ev, od)


def _eta_digits(rf, what):
    """eta-adic expansion of a canonical RatFunc whose denominator must
    be a power of eta (up to the monic normalization constant).

    Returns (m, digits) with rf = sum_j digits[j] * eta^(j-m), each digit
    a polynomial of degree <= 1.
    """
    num, (a, b, c, m), rest = rf.parts
    if a or b or c or rest.degree() > 0:
        raise NotInSpan("%s denominator has a factor other than eta" % what)
    digits = []
    for _ in range(m):
        num, r = divmod(num, F_ETA)
        digits.append(r)
    if not num.is_zero():
        raise NotInSpan("%s has a polynomial part in s" % what)
    return m, digits


def alg_to_psi(e):
    """Partial-fraction an AlgElem over eta into the psi ladder.

    Raises NotInSpan if any denominator has a non-eta factor, any eta-adic
    digit has the wrong shape (even digits must be constants, odd digits
    must be multiples of 1-2s), or a polynomial part remains.
    """
    out = {}
    if not e.even.is_zero():
        m, digits = _eta_digits(e.even, "even part")
        if m == 0:
            raise NotInSpan("even part has a polynomial part in s")
        for j, d in enumerate(digits):
            if d.is_zero():
                continue
            if d.degree() > 0:
                raise NotInSpan("even digit is not constant")
            i = 2 * (m - j - 1)
            if i < 0:
                raise NotInSpan("even part has nonnegative eta exponent")
            out[i] = out.get(i, Q(0)) + d[0]
    if not e.odd.is_zero():
        m, digits = _eta_digits(e.odd, "odd part")
        for j, d in enumerate(digits):
            if d.is_zero():
                continue
            if d[1] != -2 * d[0]:
                raise NotInSpan("odd digit is not a multiple of 1-2s")
            i = 2 * (m - j) - 3
            if i < 0:
                raise NotInSpan("odd part outside the ladder")
            out[i] = out.get(i, Q(0)) + d[0]
    v = PsiVector()
    v.entries = {i: c for i, c in out.items() if c}
    return v


_S_CACHE = {}


def s_of_z(order):
    """The series s(z) solving z = s(1-s)(1-2s)/2, s(0) = 0, with all
    coefficients through z^order (truncation order = order + 1).

    Newton iteration on f(s) = s - 3s^2 + 2s^3 - 2z; precision doubles
    each step so the cost is dominated by the last refinement.
    """
    assert order >= 1
    best = max(_S_CACHE) if _S_CACHE else 0
    if best >= order:
        return _S_CACHE[best].clip(order + 1)
    if best >= 1:
        s, known = _S_CACHE[best], best
    else:
        s, known = TruncLaurent.monomial(2, 1, 2), 1
    while known < order:
        known = min(2 * known, order)
        t = known + 1
        coeffs = list(s.coeffs) + [Q(0)] * (t - s.trunc)
        s = TruncLaurent(s.val, coeffs, t)
        two_z = TruncLaurent.monomial(2, 1, t)
        s2 = s * s
        f = s - s2.scale(3) + (s2 * s).scale(2) - two_z
        fp = TruncLaurent.const(1, t) - s.scale(6) + s2.scale(6)
        s = (s - f / fp).clip(t)
    _S_CACHE[order] = s
    return s


def alg_to_zseries(e, order):
    """Exact Laurent expansion of an AlgElem in z, coefficients through
    z^(order-1) (truncation order = order)."""
    ms = max(e.even.pole_order_at_zero(), e.odd.pole_order_at_zero())
    work = order + 2 * ms + 2
    s = s_of_z(work)
    out = TruncLaurent.zero(order)
    if not e.even.is_zero():
        out = out + e.even.eval_series(s).clip(order)
    if not e.odd.is_zero():
        root = F_ETA.eval_series(s).sqrt1()
        out = out + (e.odd.eval_series(s) * root).clip(order)
    if out.trunc < order:
        raise EssentialPole("series order lost more than the pole at s=0 "
                            "accounts for")
    return out.clip(order)


def base_series(g):
    """Closed forms for the genus-0 and genus-1 generating series."""
    if g == 0:
        return AlgElem(RatFunc(P([0, 2, -8, 4]), P([1, -5, 8, -4])), None)
    if g == 1:
        ev = RatFunc(P([1, -2]) * P([1, -1, 1]), TWOZ_P)
        od = RatFunc(P([-1]), TWOZ_P)
        return AlgElem(ev, od)
    raise ValueError("base_series covers genus 0 and 1 only")
