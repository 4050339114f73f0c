"""Rational functions in one variable over Q, kept in canonical form.

The denominators that occur in the genus pipeline are -- without
exception -- products of the four polynomials

    s,   1 - s,   1 - 2s,   eta = 1 - 6s + 6s^2,

so a RatFunc stores its denominator as an exponent vector over those
factors plus a monic "rest" polynomial for anything else (the rest is 1
for every value the pipeline produces; it exists so the type stays a
general field). This makes multiplication exponent arithmetic, keeps
reduction to a handful of exact trial divisions, and avoids the
coefficient blow-up of general polynomial gcds on the hot path.

Canonical invariants: the numerator shares no factor with the active
part of the denominator, the rest part is monic and structural-factor
free, and the zero value is (0-polynomial, zero exponents, rest 1).
Externally the value still presents as a coprime num/den pair with
monic den (properties .num/.den and to_dict), poles at s = 0 included.
"""

from .rational import Q, QZERO, QONE
from .npoly import NPolynomial
from .errors import ZeroDenominator

P = NPolynomial

ONE_P = P([1])
F_S = P([0, 1])
F_1MS = P([1, -1])       # 1 - s
F_1M2S = P([1, -2])      # 1 - 2s
F_ETA = P([1, -6, 6])    # 1 - 6s + 6s^2

FACTORS = (F_S, F_1MS, F_1M2S, F_ETA)
DFACTORS = (ONE_P, P([-1]), P([-2]), P([-6, 12]))
_ZEX = (0, 0, 0, 0)

_POW_CACHE = [{0: ONE_P}, {0: ONE_P}, {0: ONE_P}, {0: ONE_P}]


def _fpow(i, e):
    """FACTORS[i] ** e, cached."""
    cache = _POW_CACHE[i]
    if e not in cache:
        top = max(cache)
        p = cache[top]
        for k in range(top + 1, e + 1):
            p = p * FACTORS[i]
            cache[k] = p
    return cache[e]


def _structural(ex):
    out = ONE_P
    for i, e in enumerate(ex):
        if e:
            out = out * _fpow(i, e)
    return out


def _poly_gcd(a, b):
    """Monic Euclidean gcd over Q (only reached via non-structural
    denominators)."""
    while not b.is_zero():
        _, r = divmod(a, b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.scale(1 / a.leading())


def _cancel(num, ex, rest):
    """Restore canonicity after an arithmetic step."""
    if num.is_zero():
        return P(), _ZEX, ONE_P
    a, b, c, d = ex
    k = num.val_order()
    if k and a:
        k = min(k, a)
        num = num.shift_down(k)
        a -= k
    out = [a, b, c, d]
    for i in (1, 2, 3):
        while out[i]:
            q, r = divmod(num, FACTORS[i])
            if not r.is_zero():
                break
            num = q
            out[i] -= 1
    if rest.degree() > 0:
        g = _poly_gcd(num, rest)
        if g.degree() > 0:
            num, _ = divmod(num, g)
            rest, _ = divmod(rest, g)
    return num, (out[0], out[1], out[2], out[3]), rest


class RatFunc:
    __slots__ = ("_n", "_ex", "_rest")

    def __init__(self, num, den=ONE_P, reduce=True):
        if not isinstance(num, P):
            num = P([num])
        if not isinstance(den, P):
            den = P([den])
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        # factor the denominator over the structural set
        a = den.val_order()
        if a:
            den = den.shift_down(a)
        ex = [a, 0, 0, 0]
        for i in (1, 2, 3):
            while den.degree() >= FACTORS[i].degree():
                q, r = divmod(den, FACTORS[i])
                if not r.is_zero():
                    break
                den = q
                ex[i] += 1
        lead = den.leading()
        if lead != 1:
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        ex = tuple(ex)
        if reduce:
            num, ex, den = _cancel(num, ex, den)
        elif num.is_zero():
            ex, den = _ZEX, ONE_P
        self._n = num
        self._ex = ex
        self._rest = den

    @classmethod
    def _make(cls, num, ex, rest):
        out = cls.__new__(cls)
        out._n, out._ex, out._rest = _cancel(num, ex, rest)
        return out

    @classmethod
    def zero(cls):
        out = cls.__new__(cls)
        out._n, out._ex, out._rest = P(), _ZEX, ONE_P
        return out

    @classmethod
    def const(cls, c):
        out = cls.__new__(cls)
        out._n, out._ex, out._rest = P([c]), _ZEX, ONE_P
        return out

    # -- external num/den view: coprime pair with monic denominator ----

    def _den_poly(self):
        return _structural(self._ex) * self._rest

    @property
    def num(self):
        d = self._den_poly()
        lead = d.leading()
        return self._n if lead == 1 else self._n.scale(1 / lead)

    @property
    def den(self):
        d = self._den_poly()
        lead = d.leading()
        return d if lead == 1 else d.scale(1 / lead)

    def pole_order_at_zero(self):
        """Multiplicity of the pole at s = 0."""
        return self._ex[0]

    @property
    def parts(self):
        """Raw factored form (numerator, (a, b, c, d), rest): the value is
        numerator / (s^a (1-s)^b (1-2s)^c eta^d * rest), no monic
        renormalization applied."""
        return self._n, self._ex, self._rest

    def is_zero(self):
        return self._n.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self._n == other._n and self._ex == other._ex
                and self._rest == other._rest)

    def __hash__(self):
        return hash((self._n, self._ex, self._rest))

    def __repr__(self):
        return "RatFunc(%r / s^%d (1-s)^%d (1-2s)^%d eta^%d * %r)" % (
            (self._n,) + self._ex + (self._rest,))

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out._n, out._ex, out._rest = -self._n, self._ex, self._rest
        return out

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        ex = tuple(max(a, b) for a, b in zip(self._ex, other._ex))
        n1, n2 = self._n, other._n
        d1 = tuple(e - a for e, a in zip(ex, self._ex))
        d2 = tuple(e - a for e, a in zip(ex, other._ex))
        if any(d1):
            n1 = n1 * _structural(d1)
        if any(d2):
            n2 = n2 * _structural(d2)
        if self._rest == other._rest:
            return RatFunc._make(n1 + n2, ex, self._rest)
        return RatFunc._make(n1 * other._rest + n2 * self._rest, ex,
                             self._rest * other._rest)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        ex = tuple(a + b for a, b in zip(self._ex, other._ex))
        rest = (self._rest if other._rest == ONE_P else
                (other._rest if self._rest == ONE_P
                 else self._rest * other._rest))
        return RatFunc._make(self._n * other._n, ex, rest)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        if other.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        num = self._n * _structural(other._ex)
        if other._rest != ONE_P:
            num = num * other._rest
        den = _structural(self._ex) * other._n
        if self._rest != ONE_P:
            den = den * self._rest
        return RatFunc(num, den)

    def scale(self, c):
        c = Q(c)
        if not c:
            return RatFunc.zero()
        out = RatFunc.__new__(RatFunc)
        out._n, out._ex, out._rest = self._n.scale(c), self._ex, self._rest
        return out

    def deriv(self):
        """d/ds via the logarithmic form: each active denominator factor
        contributes e_i f_i'/f_i, so only small polynomials are ever
        multiplied."""
        n = self._n
        active = [i for i, e in enumerate(self._ex) if e]
        prod = ONE_P
        for i in active:
            prod = prod * FACTORS[i]
        ssum = P()
        for i in active:
            term = DFACTORS[i].scale(self._ex[i])
            for j in active:
                if j != i:
                    term = term * FACTORS[j]
            ssum = ssum + term
        new_ex = tuple(e + 1 if e else 0 for e in self._ex)
        if self._rest == ONE_P:
            num = n.deriv() * prod - n * ssum
            return RatFunc._make(num, new_ex, ONE_P)
        num = (n.deriv() * prod - n * ssum) * self._rest \
            - n * self._rest.deriv() * prod
        return RatFunc._make(num, new_ex, self._rest * self._rest)

    def eval_series(self, s):
        """Value on a series argument (poles at s = 0 come out as
        negative valuation)."""
        out = self._n.eval_series(s)
        for i, e in enumerate(self._ex):
            if e:
                out = out / _series_pow(FACTORS[i].eval_series(s), e)
        if self._rest != ONE_P:
            out = out / self._rest.eval_series(s)
        return out

    def __call__(self, v):
        acc = self._n(v) / self._rest(v)
        for i, e in enumerate(self._ex):
            if e:
                acc = acc / FACTORS[i](v) ** e
        return acc

    def to_dict(self):
        return {"num": self.num.to_list(), "den": self.den.to_list()}

    @classmethod
    def from_dict(cls, d):
        return cls(P.from_list(d["num"]), P.from_list(d["den"]))


def _series_pow(base, e):
    out = None
    sq = base
    while e:
        if e & 1:
            out = sq if out is None else out * sq
        e >>= 1
        if e:
            sq = sq * sq
    return out


def ratfunc_reduce(num, den):
    """Canonicalize a numerator/denominator pair: returns (num, den)
    coprime with den monic. Raises ZeroDenominator when den is zero."""
    rf = RatFunc(num, den)
    return rf.num, rf.den


# handy constants in the variable s
S_VAR = RatFunc(F_S)
ETA_RF = RatFunc(F_ETA)
# z = s(1-s)(1-2s)/2 as a rational function of s
Z_RF = RatFunc(P([0, QONE / 2, -Q(3) / 2, QONE]))
