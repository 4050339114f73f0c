"""Truncated partition function of the matrix ensemble in t₁, t₂, t₃.

``GradedSeries3`` is a polynomial in three time variables, graded by
weight(t_k) = k and truncated above a fixed total weight, with exact
polynomial-in-N coefficients.  ``zN_graded`` fills one with

    Z̃_N = ⟨exp(Σ_k p_k t_k / 2k)⟩ / ⟨1⟩
        = Σ_e  ⟨p₁^{e₁} p₂^{e₂} p₃^{e₃}⟩ / (e₁!e₂!e₃! 2^{e₁} 4^{e₂} 6^{e₃})
          · t₁^{e₁} t₂^{e₂} t₃^{e₃},

each moment coming from the Wick oracle.  Working with the normalised
Z̃ keeps every coefficient polynomial in N; the lost normalisation only
matters in ratios of shifted partition functions, which are restored by
``verify.mehta_ratio``.

``map_series_oracle`` specialises t_k = x δ_{k,3} and applies 6x∂_x to
log Z̃, which by the matrix-integral representation counts rooted cubic
maps: the coefficient of x^V is a polynomial in N whose N^F term counts
maps with V vertices and F faces, i.e. genus (2 − F + V/2) after the
orientable/non-orientable Euler bookkeeping.
"""

import math

from ..exact.npoly import NPolynomial, npoly_shift
from ..exact.rational import Q
from .wick import wick_moment

__all__ = [
    "GradedSeries3",
    "zN_graded",
    "log_zN",
    "map_series_oracle",
    "genus_split",
]

_ZEROP = NPolynomial()
_ONEP = NPolynomial([1])


def _weight(e):
    return e[0] + 2 * e[1] + 3 * e[2]


class GradedSeries3:
    """Polynomial in t₁, t₂, t₃ truncated by weight, NPolynomial coefficients.

    ``caps`` optionally bounds each exponent separately (on top of the
    weight bound); arithmetic intersects the windows of its operands, so
    a series built on a sub-window stays exact on that window.
    """

    __slots__ = ("w", "caps", "c")

    def __init__(self, max_weight, caps=None, coeffs=None):
        self.w = int(max_weight)
        if caps is None:
            caps = (self.w, self.w // 2, self.w // 3)
        self.caps = (int(caps[0]), int(caps[1]), int(caps[2]))
        self.c = {}
        if coeffs:
            for e, p in coeffs.items():
                self._set(tuple(e), p)

    def _inside(self, e):
        return (
            _weight(e) <= self.w
            and e[0] <= self.caps[0]
            and e[1] <= self.caps[1]
            and e[2] <= self.caps[2]
        )

    def _set(self, e, p):
        if self._inside(e) and not p.is_zero():
            self.c[e] = p

    def coeff(self, e):
        return self.c.get(tuple(e), _ZEROP)

    def window(self, other):
        w = min(self.w, other.w)
        caps = tuple(min(a, b) for a, b in zip(self.caps, other.caps))
        return w, caps

    def is_zero(self):
        return not self.c

    def __eq__(self, other):
        if not isinstance(other, GradedSeries3):
            return NotImplemented
        return self.w == other.w and self.caps == other.caps and self.c == other.c

    def __hash__(self):
        return hash((self.w, self.caps, tuple(sorted(self.c.items(), key=lambda kv: kv[0]))))

    def __neg__(self):
        out = GradedSeries3(self.w, self.caps)
        out.c = {e: -p for e, p in self.c.items()}
        return out

    def __add__(self, other):
        w, caps = self.window(other)
        out = GradedSeries3(w, caps)
        for e in set(self.c) | set(other.c):
            out._set(e, self.coeff(e) + other.coeff(e))
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        w, caps = self.window(other)
        out = GradedSeries3(w, caps)
        acc = {}
        for e1, p1 in self.c.items():
            for e2, p2 in other.c.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                if _weight(e) > w or e[0] > caps[0] or e[1] > caps[1] or e[2] > caps[2]:
                    continue
                q = p1 * p2
                if e in acc:
                    acc[e] = acc[e] + q
                else:
                    acc[e] = q
        for e, p in acc.items():
            out._set(e, p)
        return out

    def scale(self, q):
        q = Q(q)
        out = GradedSeries3(self.w, self.caps)
        if q:
            out.c = {e: p.scale(q) for e, p in self.c.items()}
        return out

    def mul_poly(self, poly):
        """Multiply every coefficient by a fixed polynomial in N."""
        out = GradedSeries3(self.w, self.caps)
        if not poly.is_zero():
            for e, p in self.c.items():
                out._set(e, p * poly)
        return out

    def add_const(self, p):
        out = GradedSeries3(self.w, self.caps)
        out.c = dict(self.c)
        z = (0, 0, 0)
        s = out.c.get(z, _ZEROP) + p
        if s.is_zero():
            out.c.pop(z, None)
        else:
            out.c[z] = s
        return out

    def dt(self, k):
        """Formal ∂/∂t_k."""
        i = k - 1
        out = GradedSeries3(self.w, self.caps)
        for e, p in self.c.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out._set(tuple(f), p.scale(Q(e[i])))
        return out

    def mul_t(self, k):
        """Multiply by t_k (truncating at the window)."""
        i = k - 1
        out = GradedSeries3(self.w, self.caps)
        for e, p in self.c.items():
            f = list(e)
            f[i] += 1
            out._set(tuple(f), p)
        return out

    def shift_n(self, delta):
        """Substitute N ↦ N + delta in every coefficient."""
        out = GradedSeries3(self.w, self.caps)
        for e, p in self.c.items():
            out._set(e, npoly_shift(p, delta))
        return out

    def truncate(self, max_weight):
        out = GradedSeries3(min(self.w, max_weight), self.caps)
        for e, p in self.c.items():
            out._set(e, p)
        return out

    def log(self):
        """Formal log; requires constant term 1."""
        if self.coeff((0, 0, 0)) != _ONEP:
            raise ValueError("log requires constant term 1")
        u = self.add_const(-_ONEP)
        out = GradedSeries3(self.w, self.caps)
        powu = None
        for j in range(1, self.w + 1):
            powu = u if powu is None else powu * u
            if powu.is_zero():
                break
            sign = Q(1, j) if j % 2 else Q(-1, j)
            out = out + powu.scale(sign)
        return out

    def exp(self):
        """Formal exp; requires constant term 0."""
        if not self.coeff((0, 0, 0)).is_zero():
            raise ValueError("exp requires constant term 0")
        out = GradedSeries3(self.w, self.caps).add_const(_ONEP)
        powu = None
        fact = 1
        for j in range(1, self.w + 1):
            powu = self if powu is None else powu * self
            if powu.is_zero():
                break
            fact *= j
            out = out + powu.scale(Q(1, fact))
        return out

    def t3_axis(self):
        """Coefficients of the pure-t₃ monomials, as {e₃: NPolynomial}."""
        return {e[2]: p for e, p in self.c.items() if e[0] == 0 and e[1] == 0}

    def __repr__(self):
        return "GradedSeries3(w=%d, %d terms)" % (self.w, len(self.c))


def zN_graded(max_weight, caps=None):
    """Z̃_N as a graded series with every coefficient from the Wick oracle."""
    out = GradedSeries3(max_weight, caps)
    c1, c2, c3 = out.caps
    for e1 in range(c1 + 1):
        for e2 in range(c2 + 1):
            if e1 + 2 * e2 > out.w:
                break
            for e3 in range(c3 + 1):
                e = (e1, e2, e3)
                if _weight(e) > out.w:
                    break
                if (e1 + 2 * e2 + 3 * e3) % 2:
                    continue
                mom = wick_moment([1] * e1 + [2] * e2 + [3] * e3)
                if mom.is_zero():
                    continue
                den = (
                    math.factorial(e1)
                    * math.factorial(e2)
                    * math.factorial(e3)
                    * 2**e1
                    * 4**e2
                    * 6**e3
                )
                out._set(e, mom.scale(Q(1, den)))
    return out


def log_zN(max_weight, caps=None):
    """log Z̃_N (zero constant term) on the requested window."""
    return zN_graded(max_weight, caps).log()


def map_series_oracle(v_max):
    """{V: [x^V] L⁽³⁾(x, N)} from the matrix integral, V = 1..v_max.

    Only the pure-t₃ window of Z̃ is needed: L⁽³⁾(x, N) = 6x∂_x log Z̃
    at t = (0, 0, x), so [x^V] is 6V times the t₃^V coefficient of the
    logarithm.  Odd V vanish (an odd number of odd traces).
    """
    y = log_zN(3 * v_max, caps=(0, 0, v_max))
    axis = y.t3_axis()
    out = {}
    for v in range(1, v_max + 1):
        out[v] = axis.get(v, _ZEROP).scale(Q(6 * v))
    return out


def genus_split(v, poly):
    """Counts by genus for one [x^V] entry of the oracle map series.

    A term c·N^F records c maps with V vertices and F faces; Euler's
    relation for cubic maps gives genus g = 2 − F + V/2.  Returns the
    list [g=0, g=1, ...] up to the maximum genus present.
    """
    if v % 2:
        return []
    top = 2 + v // 2
    if poly.degree() > top:
        raise ValueError("N-degree exceeds the Euler bound")
    out = []
    for g in range(top):
        f = top - g
        c = poly[f]
        if c.denominator != 1:
            raise ValueError("non-integer map count at V=%d, F=%d" % (v, f))
        out.append(int(c))
    # drop the all-zero high-genus tail but keep interior zeros
    while out and not out[-1]:
        out.pop()
    return out
