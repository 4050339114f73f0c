"""Truncated Laurent series with exact coefficients.

A value represents sum_{e=val}^{trunc-1} coeffs[e-val] * z^e, with the
guarantee that every coefficient below `trunc` is stored exactly and
nothing is known at or above `trunc` (exclusive truncation order).
Coefficients are rationals or elements of Q(sqrt 3); storage is dense.

Truncation bookkeeping is pessimistic: every operation reports the
largest order that is provably correct given the operands' orders, e.g.
trunc(a*b) = min(val(a)+trunc(b), val(b)+trunc(a)).
"""

from .rational import Q, QZERO, QRoot3, q_str, q_parse, qr3_str, qr3_parse
from .errors import DivByZeroSeries, SqrtDomain, ValuationError


def _c(x):
    # coefficients live in Q or QRoot3; plain ints are lifted so that
    # coefficient division never falls back to floats
    if isinstance(x, QRoot3):
        return x
    return Q(x)


class TruncLaurent:
    __slots__ = ("val", "coeffs", "trunc")

    def __init__(self, val, coeffs, trunc):
        coeffs = [_c(x) for x in coeffs]
        assert trunc - val == len(coeffs), "dense storage length mismatch"
        # normalize: leading stored coefficient nonzero, or no terms at all
        k = 0
        while k < len(coeffs) and not coeffs[k]:
            k += 1
        if k == len(coeffs):
            self.val = trunc
            self.coeffs = []
        else:
            self.val = val + k
            self.coeffs = coeffs[k:]
        self.trunc = trunc

    # ---- constructors ----

    @classmethod
    def zero(cls, trunc):
        return cls(trunc, [], trunc)

    @classmethod
    def const(cls, c, trunc):
        if trunc <= 0:
            return cls.zero(trunc)
        return cls(0, [c] + [0] * (trunc - 1), trunc)

    @classmethod
    def monomial(cls, c, e, trunc):
        if trunc <= e:
            return cls.zero(trunc)
        return cls(e, [c] + [0] * (trunc - 1 - e), trunc)

    # ---- inspection ----

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, e):
        """Coefficient of z^e; e must lie below the truncation order."""
        assert e < self.trunc, "coefficient above truncation order"
        if e < self.val:
            return QZERO
        return self.coeffs[e - self.val]

    def __eq__(self, other):
        if not isinstance(other, TruncLaurent):
            return NotImplemented
        return (self.val == other.val and self.trunc == other.trunc
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.val, self.trunc, tuple(self.coeffs)))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs[:6]):
            if c:
                terms.append("%s*z^%d" % (c, self.val + k))
        body = " + ".join(terms) if terms else "0"
        if len(self.coeffs) > 6:
            body += " + ..."
        return "TruncLaurent(%s + O(z^%d))" % (body, self.trunc)

    # ---- arithmetic ----

    def __neg__(self):
        return TruncLaurent(self.val, [-c for c in self.coeffs], self.trunc)

    def __add__(self, other):
        if not isinstance(other, TruncLaurent):
            return NotImplemented
        t = min(self.trunc, other.trunc)
        v = min(self.val, other.val, t)
        out = [QZERO] * (t - v)
        for k, c in enumerate(self.coeffs):
            e = self.val + k
            if e < t:
                out[e - v] = c
        for k, c in enumerate(other.coeffs):
            e = other.val + k
            if e < t:
                out[e - v] = out[e - v] + c
        return TruncLaurent(v, out, t)

    def __sub__(self, other):
        if not isinstance(other, TruncLaurent):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncLaurent):
            return NotImplemented
        t = min(self.val + other.trunc, other.val + self.trunc)
        if self.is_zero() or other.is_zero():
            return TruncLaurent.zero(t)
        v = self.val + other.val
        n = t - v
        if n <= 0:
            return TruncLaurent.zero(t)
        out = [QZERO] * n
        a, b = self.coeffs, other.coeffs
        for i, ai in enumerate(a):
            if not ai or i >= n:
                continue
            top = min(len(b), n - i)
            for j in range(top):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return TruncLaurent(v, out, t)

    def scale(self, c):
        c = _c(c)
        if not c:
            return TruncLaurent.zero(self.trunc)
        return TruncLaurent(self.val, [c * x for x in self.coeffs], self.trunc)

    def shift(self, k):
        """Multiply by z^k."""
        return TruncLaurent(self.val + k, list(self.coeffs), self.trunc + k)

    def __truediv__(self, other):
        if not isinstance(other, TruncLaurent):
            return NotImplemented
        if other.is_zero():
            raise DivByZeroSeries(
                "denominator has no known nonzero coefficient")
        qv = self.val - other.val
        n = min(self.trunc - self.val, other.trunc - other.val)
        if self.is_zero():
            return TruncLaurent.zero(self.trunc - other.val)
        b0 = other.coeffs[0]
        b = other.coeffs
        qs = []
        for k in range(n):
            acc = self.coeffs[k] if k < len(self.coeffs) else QZERO
            lo = max(0, k - len(b) + 1)
            for i in range(lo, k):
                qi = qs[i]
                if qi:
                    acc = acc - qi * b[k - i]
            qs.append(acc / b0)
        return TruncLaurent(qv, qs, qv + n)

    def sqrt1(self):
        """Square root of a series with constant term 1."""
        if self.val != 0 or self.coefficient(0) != 1:
            raise SqrtDomain("sqrt1 needs valuation 0 and constant term 1")
        n = self.trunc
        r = [Q(1)] + [QZERO] * (n - 1)
        for k in range(1, n):
            acc = self.coefficient(k)
            for i in range(1, k):
                ri = r[i]
                if ri:
                    acc = acc - ri * r[k - i]
            r[k] = acc / 2
        return TruncLaurent(0, r, n)

    def diff(self):
        """Derivative d/dz."""
        out = []
        for k, c in enumerate(self.coeffs):
            e = self.val + k
            out.append(e * c)
        return TruncLaurent(self.val - 1, out, self.trunc - 1)

    def clip(self, trunc):
        """Forget coefficients at or above the given order."""
        if trunc >= self.trunc:
            return self
        v = min(self.val, trunc)
        return TruncLaurent(v, [self.coefficient(e) for e in range(v, trunc)],
                            trunc)

    # ---- serialization ----

    def to_map(self):
        cmap = {}
        for k, c in enumerate(self.coeffs):
            if c:
                if isinstance(c, QRoot3):
                    cmap[str(self.val + k)] = qr3_str(c)
                else:
                    cmap[str(self.val + k)] = q_str(c)
        return {"valuation": self.val, "truncation_order": self.trunc,
                "coefficients": cmap}

    @classmethod
    def from_map(cls, m):
        t = m["truncation_order"]
        items = []
        for k, s in m["coefficients"].items():
            c = qr3_parse(s) if isinstance(s, dict) else q_parse(s)
            items.append((int(k), c))
        if not items:
            return cls.zero(t)
        v = min(e for e, _ in items)
        out = [QZERO] * (t - v)
        for e, c in items:
            out[e - v] = c
        return cls(v, out, t)


def series_arith(a, b, op):
    """Binary/unary series arithmetic dispatcher.

    op in {'add','sub','mul','div'} uses both operands; {'sqrt1','diff'}
    ignore b.
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "sqrt1":
        return a.sqrt1()
    if op == "diff":
        return a.diff()
    raise ValueError("unknown op %r" % (op,))


def series_compose(outer, inner):
    """outer(inner(z)) for inner with valuation >= 1."""
    v_in = inner.val  # equals trunc for the zero series
    if v_in < 1:
        raise ValuationError("inner series must have valuation >= 1")
    tail = outer.trunc * v_in  # unknown outer tail enters at this order
    acc = TruncLaurent.zero(tail)
    if outer.is_zero():
        return acc
    # nonnegative exponents of outer
    top = outer.trunc
    lo = outer.val
    pw = None  # inner^k, built incrementally
    for k in range(max(lo, 0), top):
        if pw is None:
            if k == 0:
                pw = TruncLaurent.const(1, tail)
            else:
                pw = inner
                for _ in range(k - 1):
                    pw = pw * inner
        else:
            pw = pw * inner
        c = outer.coefficient(k)
        if c:
            acc = acc + pw.scale(c)
    # negative exponents, via powers of the inverse
    if lo < 0:
        one = TruncLaurent.const(1, inner.trunc)
        inv = one / inner
        pw = inv
        for k in range(-1, lo - 1, -1):
            c = outer.coefficient(k)
            if c:
                acc = acc + pw.scale(c)
            if k > lo:
                pw = pw * inv
    return acc.clip(min(acc.trunc, tail))
