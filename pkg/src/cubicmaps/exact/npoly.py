"""Dense polynomials with exact rational coefficients.

Used both for polynomials-in-N (matrix-dimension grading in the moment
oracle) and as the numerator/denominator type of RatFunc. Canonical
form stores no trailing zero coefficients; the zero polynomial is [].
"""

from .rational import Q, QZERO, q_str, q_parse
from .series import TruncLaurent


class NPolynomial:
    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [Q(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = c

    @classmethod
    def x(cls):
        return cls([0, 1])

    def is_zero(self):
        return not self.c

    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    def leading(self):
        return self.c[-1] if self.c else QZERO

    def __getitem__(self, k):
        if 0 <= k < len(self.c):
            return self.c[k]
        return QZERO

    def __eq__(self, other):
        if not isinstance(other, NPolynomial):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(self.c))

    def __repr__(self):
        if not self.c:
            return "NPolynomial(0)"
        return "NPolynomial([%s])" % ", ".join(q_str(x) for x in self.c)

    def __neg__(self):
        return NPolynomial([-x for x in self.c])

    def __add__(self, other):
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, x in enumerate(b):
            out[k] = out[k] + x
        return NPolynomial(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.c, other.c
        if not a or not b:
            return NPolynomial()
        out = [QZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return NPolynomial(out)

    def scale(self, s):
        s = Q(s)
        if not s:
            return NPolynomial()
        return NPolynomial([s * x for x in self.c])

    def __divmod__(self, other):
        """Exact long division over Q."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        d = other.c
        dd = len(d) - 1
        lead = d[-1]
        if len(r) - 1 < dd:
            return NPolynomial(), NPolynomial(r)
        q = [QZERO] * (len(r) - dd)
        for k in range(len(r) - 1, dd - 1, -1):
            coef = r[k]
            if not coef:
                continue
            coef = coef / lead
            q[k - dd] = coef
            for j in range(dd + 1):
                r[k - dd + j] = r[k - dd + j] - coef * d[j]
        return NPolynomial(q), NPolynomial(r)

    def deriv(self):
        return NPolynomial([k * x for k, x in enumerate(self.c)][1:])

    def __call__(self, v):
        """Horner evaluation; v may be rational, QRoot3 or a float."""
        acc = 0
        for x in reversed(self.c):
            acc = acc * v + x
        return acc

    def eval_series(self, s):
        """Evaluate at a TruncLaurent argument (valuation >= 0)."""
        acc = TruncLaurent.zero(s.trunc)
        for x in reversed(self.c):
            acc = acc * s + TruncLaurent.const(x, max(acc.trunc, s.trunc))
        return acc

    def val_order(self):
        """Multiplicity of the root at 0."""
        for k, x in enumerate(self.c):
            if x:
                return k
        return 0

    def shift_down(self, k):
        """Divide by x^k (the first k coefficients must vanish)."""
        assert all(not x for x in self.c[:k])
        return NPolynomial(self.c[k:])

    def to_list(self):
        return [q_str(x) for x in self.c]

    @classmethod
    def from_list(cls, lst):
        return cls([q_parse(x) for x in lst])


def npoly_shift(p, c):
    """Substitute x -> x + c, exactly."""
    c = Q(c)
    acc = NPolynomial()
    lin = NPolynomial([c, 1])
    for x in reversed(p.c):
        acc = acc * lin + NPolynomial([x])
    return acc
