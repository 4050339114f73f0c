"""Exact pfaffians and the combinatorial identities the engine leans on.

The pfaffian is taken in recursive form as the normative definition:

    (a₁, …, a_{2m}) = Σ_{j=2}^{2m} (−1)^j (a₁, a_j)(a₂, …, â_j, …, a_{2m}),

with () = 1, over any commutative ring (exact rationals here, or the
formal moment symbols used by the derivative-rule check).  Three facts
are verified against independent routes: Pf(A)² = det(A) with the
determinant from exact Gaussian elimination, the quadratic expansion
identity used to peel two rows off a bordered pfaffian, and the
index-shift rule induced on pfaffians by entry derivatives
2k ∂_k μ_{i,j} = μ_{i+k,j} + μ_{i,j+k}.
"""

import random

from ..exact.rational import Q, QZERO, QONE

__all__ = [
    "OddDimension",
    "AntisymMatrix",
    "pfaffian",
    "det_exact",
    "random_antisym",
    "pfaffian_square_check",
    "pfaffian_quadratic_identity",
    "pfaffian_derivative_rule",
]


class OddDimension(ValueError):
    """Pfaffian of an odd-dimensional matrix requested."""


class AntisymMatrix:
    """Square matrix with a[j][i] = −a[i][j] enforced at construction."""

    __slots__ = ("rows", "dim")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        d = len(rows)
        for r in rows:
            if len(r) != d:
                raise ValueError("matrix must be square")
        for i in range(d):
            for j in range(i, d):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(
                        "entry (%d,%d) breaks antisymmetry" % (i, j)
                    )
        self.rows = rows
        self.dim = d

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def direct_sum(cls, a, b):
        n, m = a.dim, b.dim
        rows = []
        for i in range(n):
            rows.append(list(a.rows[i]) + [QZERO] * m)
        for i in range(m):
            rows.append([QZERO] * n + list(b.rows[i]))
        return cls(rows)


def _pf_rec(entry, labels, memo):
    if not labels:
        return None  # empty product, handled by caller
    if len(labels) == 2:
        return entry(labels[0], labels[1])
    val = memo.get(labels)
    if val is not None:
        return val
    a1 = labels[0]
    rest = labels[1:]
    acc = None
    for pos in range(1, len(labels)):
        aj = labels[pos]
        sub = rest[: pos - 1] + rest[pos:]
        term = entry(a1, aj)
        tail = _pf_rec(entry, sub, memo)
        if tail is not None:
            term = term * tail
        if pos % 2:  # (−1)^j with j = pos+1 odd position → even j
            pass
        else:
            term = -term
        acc = term if acc is None else acc + term
    memo[labels] = acc
    return acc


def pfaffian_of(entry, labels):
    """Pfaffian of the antisymmetric array ``entry(i, j)`` over ``labels``.

    ``labels`` is an ordered sequence (repeats allowed — the result is
    then zero by antisymmetry, which the expansion produces on its own).
    Returns the ring element; the empty sequence yields None (treat as 1).
    """
    labels = tuple(labels)
    if len(labels) % 2:
        raise OddDimension("pfaffian needs an even number of rows")
    return _pf_rec(entry, labels, {})


def pfaffian(a):
    """Pfaffian of an AntisymMatrix (or raw antisymmetric rows)."""
    if not isinstance(a, AntisymMatrix):
        a = AntisymMatrix(a)
    if a.dim % 2:
        raise OddDimension("pfaffian needs even dimension, got %d" % a.dim)
    if a.dim == 0:
        return QONE
    return pfaffian_of(lambda i, j: a.rows[i][j], range(a.dim))


def det_exact(rows):
    """Determinant by exact fraction Gaussian elimination with pivoting."""
    m = [[Q(x) for x in r] for r in rows]
    n = len(m)
    det = QONE
    for c in range(n):
        piv = None
        for r in range(c, n):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            return QZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = QONE / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                for k in range(c, n):
                    m[r][k] = m[r][k] - f * m[c][k]
    return det


def random_antisym(dim, rng):
    """Antisymmetric matrix with small random rational entries."""
    rows = [[QZERO] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            v = Q(rng.randint(-9, 9), rng.randint(1, 5))
            rows[i][j] = v
            rows[j][i] = -v
    return AntisymMatrix(rows)


def pfaffian_square_check(dims=range(2, 11, 2), trials=100, seed=0):
    """Pf(A)² = det(A) on seeded random matrices; returns a report.

    ``trials`` matrices are drawn, cycling through the requested (even)
    dimensions.
    """
    dims = list(dims)
    rng = random.Random(seed)
    failure = None
    for t in range(trials):
        dim = dims[t % len(dims)]
        a = random_antisym(dim, rng)
        if pfaffian(a) ** 2 != det_exact(a.rows):
            failure = {"dim": dim, "trial": t}
            break
    return {
        "check": "pfaffian-square",
        "variant": "dims %d-%d, %d matrices" % (dims[0], dims[-1], trials),
        "max_weight": None,
        "status": "passed" if failure is None else "failed",
        "first_failure": failure,
        "seed": seed,
    }


def pfaffian_quadratic_identity(m, n, seed=0, trials=3):
    """The bordered-pfaffian expansion on random entries.

    With α = (a₁, …, a_{2m}) extra labels and β = (1, …, 2n) base labels,

        Pf(α, β) · Pf(β) = Σ_{j=2}^{2m} (−1)^j Pf(a₁, a_j, β)
                           · Pf(a₂, …, â_j, …, a_{2m}, β).
    """
    if m < 1 or n < 1 or m > 3 or n > 3:
        raise ValueError("identity exercised for 1 <= m, n <= 3")
    rng = random.Random(seed)
    dim = 2 * m + 2 * n
    failure = None
    for trial in range(trials):
        a = random_antisym(dim, rng)
        entry = lambda i, j: a.rows[i][j]
        alpha = list(range(2 * m))
        beta = list(range(2 * m, dim))
        lhs = pfaffian_of(entry, alpha + beta) * pfaffian_of(entry, beta)
        rhs = QZERO
        for pos in range(1, 2 * m):  # a_j at 1-based position j = pos+1
            sign = QONE if (pos + 1) % 2 == 0 else -QONE
            first = pfaffian_of(entry, [alpha[0], alpha[pos]] + beta)
            rest = [alpha[t] for t in range(1, 2 * m) if t != pos]
            second = pfaffian_of(entry, rest + beta)
            if second is None:
                second = QONE
            rhs = rhs + sign * first * second
        if lhs != rhs:
            failure = {"m": m, "n": n, "trial": trial}
            break
    return {
        "check": "pfaffian-quadratic",
        "variant": "m=%d n=%d" % (m, n),
        "max_weight": None,
        "status": "passed" if failure is None else "failed",
        "first_failure": failure,
        "seed": seed,
    }


class FormalSum:
    """Exact linear combination of products of moment symbols μ_{i,j}.

    A monomial is a sorted tuple of (i, j) index pairs with i < j; the
    antisymmetry μ_{j,i} = −μ_{i,j} and μ_{i,i} = 0 are normalised into
    the coefficient.  Supports ring arithmetic and the entry derivative
    2k ∂_k μ_{i,j} = μ_{i+k,j} + μ_{i,j+k}.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, coef in terms.items():
                if coef:
                    self.terms[mono] = self.terms.get(mono, QZERO) + coef
            self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def symbol(cls, i, j):
        if i == j:
            return cls()
        if i > j:
            return cls({((j, i),): -QONE})
        return cls({((i, j),): QONE})

    def __add__(self, other):
        out = dict(self.terms)
        for mono, coef in other.terms.items():
            s = out.get(mono, QZERO) + coef
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return FormalSum(out)

    def __neg__(self):
        return FormalSum({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2))
                s = out.get(mono, QZERO) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return FormalSum(out)

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def d_k(self, k):
        """2k ∂_k applied via the entry rule, product (Leibniz) on monomials."""
        out = FormalSum()
        for mono, coef in self.terms.items():
            for pos, (i, j) in enumerate(mono):
                rest = mono[:pos] + mono[pos + 1 :]
                base = FormalSum({rest: coef}) if rest else FormalSum({(): coef})
                bumped = FormalSum.symbol(i + k, j) + FormalSum.symbol(i, j + k)
                out = out + base * bumped
        return out

    def __repr__(self):
        if not self.terms:
            return "FormalSum(0)"
        bits = []
        for mono, coef in sorted(self.terms.items()):
            name = "*".join("u[%d,%d]" % p for p in mono) or "1"
            bits.append("%s %s" % (coef, name))
        return "FormalSum(%s)" % "; ".join(bits)


def pfaffian_derivative_rule(k, size, seed=None):
    """Pfaffian-level consequence of the entry derivative rule.

    For formal entries μ_{i,j} with 2k ∂_k μ_{i,j} = μ_{i+k,j} + μ_{i,j+k},
    differentiating the recursive pfaffian expansion must give

        2k ∂_k (a₁, …, a_{2N}) = Σ_j (a₁, …, a_j + k, …, a_{2N}).

    Verified by symbolic expansion; labels are 1..2N.
    """
    if size % 2:
        raise OddDimension("pfaffian needs an even number of labels")
    if size > 6 or k > 3 or size < 2 or k < 1:
        raise ValueError("rule exercised for 2N <= 6, k <= 3")
    entry = FormalSum.symbol
    labels = list(range(1, size + 1))
    lhs = pfaffian_of(entry, labels).d_k(k)
    rhs = FormalSum()
    for pos in range(size):
        bumped = labels[:pos] + [labels[pos] + k] + labels[pos + 1 :]
        rhs = rhs + pfaffian_of(entry, bumped)
    ok = lhs == rhs
    return {
        "check": "pfaffian-derivative",
        "variant": "2N=%d k=%d" % (size, k),
        "max_weight": None,
        "status": "passed" if ok else "failed",
        "first_failure": None if ok else {"diff_terms": len((lhs - rhs).terms)},
        "seed": seed,
    }
