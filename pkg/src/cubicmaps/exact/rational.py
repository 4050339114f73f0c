"""Exact scalar arithmetic: rationals and the quadratic extension Q(sqrt(3)).

gmpy2.mpq is used when available (much faster on the big numerators that
show up past genus ~10); fractions.Fraction is a drop-in fallback.
"""

try:
    from gmpy2 import mpq as Q
    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Q
    HAVE_GMPY2 = False

QZERO = Q(0)
QONE = Q(1)


def qq(a, b=None):
    """Build a rational. qq(2,3) == 2/3, qq('2/3') parses a string."""
    if b is None:
        if isinstance(a, str):
            return q_parse(a)
        return Q(a)
    return Q(a, b)


def is_rat(x):
    return isinstance(x, (int, type(QZERO)))


def q_str(x):
    """Serialize a rational as 'p/q' (or just 'p' when the denominator is 1)."""
    x = Q(x)
    n, d = x.numerator, x.denominator
    if d == 1:
        return str(n)
    return "%d/%d" % (n, d)


def q_parse(s):
    s = s.strip()
    if "/" in s:
        n, d = s.split("/")
        return Q(int(n), int(d))
    return Q(int(s))


class QRoot3:
    """Element a + b*sqrt(3) with rational a, b.

    A field: norm a^2 - 3 b^2 vanishes only at 0 since 3 is not a
    rational square, so division always works away from zero.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Q(a)
        self.b = Q(b)

    def __repr__(self):
        if self.b == 0:
            return "QRoot3(%s)" % q_str(self.a)
        return "QRoot3(%s, %s)" % (q_str(self.a), q_str(self.b))

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QRoot3(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QRoot3(-self.a, -self.b)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QRoot3(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QRoot3(other.a - self.a, other.b - self.b)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QRoot3(self.a * other.a + 3 * self.b * other.b,
                      self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.a * other.a - 3 * other.b * other.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        return QRoot3((self.a * other.a - 3 * self.b * other.b) / n,
                      (self.b * other.a - self.a * other.b) / n)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conj(self):
        """Galois conjugate a - b*sqrt(3)."""
        return QRoot3(self.a, -self.b)

    def is_rational(self):
        return self.b == 0

    def __float__(self):
        return float(self.a) + float(self.b) * 3.0 ** 0.5


def _coerce(x):
    if isinstance(x, QRoot3):
        return x
    if is_rat(x):
        return QRoot3(x)
    return NotImplemented


SQRT3 = QRoot3(0, 1)


def qr3_str(x):
    """Serialize to {'a': 'p/q', 'b': 'p/q'}."""
    x = x if isinstance(x, QRoot3) else QRoot3(x)
    return {"a": q_str(x.a), "b": q_str(x.b)}


def qr3_parse(d):
    return QRoot3(q_parse(d["a"]), q_parse(d["b"]))
