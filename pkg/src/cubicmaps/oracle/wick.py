"""Exact GOE moments by Wick-pairing enumeration.

``wick_moment(ks)`` computes ⟨∏ tr M^{k_j}⟩ / ⟨1⟩ for a real symmetric
Gaussian matrix with covariance ⟨M_ij M_kl⟩ = δ_ik δ_jl + δ_il δ_jk,
as an exact polynomial in the matrix dimension N.

The model: write each trace as a cycle of "half-edges", one per matrix
factor.  Half-edge h occupies two index *slots* — its own position x(h)
and the next position y(h) in the cycle — so tr M^k contributes k
half-edges over k slots.  A Wick pairing matches the half-edges in
pairs; each matched pair resolves its covariance into one of two delta
patterns (xx·yy or xy·yx).  A fully resolved pairing glues the slots
into index loops, and every loop contributes a free index summed over
1..N.  Hence

    moment = Σ_{pairings} Σ_{resolutions} N^{#loops},

which we accumulate as a histogram over loop counts.

Enumeration is organised so the choice of partner for half-edge 0
partitions the work into independent tasks (an associative reduction —
task order cannot affect the result).  When every cycle has the same
length, the stabiliser of half-edge 0 in the relabelling group (the
reflection fixing its edge, cycle rotations, and permutations of the
other cycles) acts on those tasks, and one representative per orbit,
weighted by orbit size, suffices.  For six tr M³ factors this cuts the
leaf count 8.5×.

Two interchangeable backends walk the enumeration tree:

* a compiled kernel (numba) doing iterative depth-first search with a
  union-find that supports O(1) rollback, and
* a numpy kernel that enumerates pairings in Python but sweeps all 2^m
  delta-resolutions of each pairing at once with vectorised min-label
  propagation.

Set ``CUBICMAPS_NO_NUMBA=1`` to force the numpy path.
"""

import math
import os

import numpy as np

from ..exact.npoly import NPolynomial
from ..genus import SizeLimit

__all__ = [
    "MAX_HALF_EDGES",
    "active_backend",
    "wick_loop_histogram",
    "wick_moment",
]

# Past ~18 half-edges the enumeration (double factorial × 2^pairs) stops
# being a "wait a few minutes" computation.
MAX_HALF_EDGES = 18

try:  # pragma: no cover - exercised implicitly by backend selection
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


def active_backend():
    """Name of the kernel that a histogram call would use right now."""
    if os.environ.get("CUBICMAPS_NO_NUMBA", "") not in ("", "0"):
        return "numpy"
    return "numba" if _HAVE_NUMBA else "numpy"


def _slots(ks):
    """x/y slot index of every half-edge for cycles of lengths ``ks``."""
    xs, ys = [], []
    base = 0
    for k in ks:
        for i in range(k):
            xs.append(base + i)
            ys.append(base + (i + 1) % k)
        base += k
    return xs, ys


def _first_pair_tasks(ks, reduce_symmetry):
    """(partner, weight) tasks covering every partner choice for half-edge 0.

    Weights always sum to n−1.  With ``reduce_symmetry`` and all cycle
    lengths equal, partners are grouped into orbits of the stabiliser of
    half-edge 0: same-cycle partners j and k−j are swapped by the
    reflection through half-edge 0's edge, and all other-cycle partners
    are equivalent under cycle rotations and cycle permutations.
    """
    n = sum(ks)
    if not reduce_symmetry or len(set(ks)) != 1:
        return [(q, 1) for q in range(1, n)]
    k = ks[0]
    tasks = []
    for j in range(1, k):
        if j < k - j:
            tasks.append((j, 2))
        elif j == k - j:
            tasks.append((j, 1))
    if len(ks) > 1:
        tasks.append((k, (len(ks) - 1) * k))
    assert sum(w for _, w in tasks) == n - 1
    return tasks


# --------------------------------------------------------------------------
# Compiled kernel: iterative DFS over (partner, resolution) choices with a
# rollback union-find.  No recursion, no path compression (compression would
# break O(1) undo); trees stay shallow through union by rank.


@njit(cache=True)
def _uf_find(parent, i):
    while parent[i] != i:
        i = parent[i]
    return i


@njit(cache=True)
def _hist_kernel(xs, ys, partner0, weight0, hist):
    n = xs.shape[0]
    m = n // 2
    parent = np.empty(n, np.int64)
    rank = np.zeros(n, np.int64)
    matched = np.zeros(n, np.bool_)
    undo = np.empty(n + 4, np.int64)  # child_root*2 + rank_bump per union
    pv = np.empty(m, np.int64)  # pivot half-edge at each depth
    pt = np.empty(m, np.int64)  # current partner at each depth
    rs = np.empty(m, np.int64)  # next delta-resolution to try (0, 1, 2=done)
    mk = np.empty(m, np.int64)  # undo-stack watermark at depth entry

    for t in range(partner0.shape[0]):
        w = weight0[t]
        for i in range(n):
            parent[i] = i
            rank[i] = 0
            matched[i] = False
        comp = n
        top = 0
        d = 0
        pv[0] = 0
        pt[0] = partner0[t]
        rs[0] = 0
        mk[0] = 0
        matched[0] = True
        matched[pt[0]] = True

        while d >= 0:
            # roll back whatever the previous resolution at this depth glued
            while top > mk[d]:
                top -= 1
                e = undo[top]
                child = e >> 1
                par = parent[child]
                parent[child] = child
                if e & 1:
                    rank[par] -= 1
                comp += 1

            if rs[d] >= 2:
                # both resolutions done: advance this depth's partner
                matched[pt[d]] = False
                if d == 0:
                    matched[0] = False
                    d = -1  # partner fixed by the task: pop everything
                    continue
                q = pt[d] + 1
                while q < n and matched[q]:
                    q += 1
                if q >= n:
                    matched[pv[d]] = False
                    d -= 1
                    continue
                pt[d] = q
                matched[q] = True
                rs[d] = 0
                continue

            res = rs[d]
            rs[d] += 1
            h1 = pv[d]
            h2 = pt[d]
            if res == 0:
                a1 = xs[h1]
                b1 = xs[h2]
                a2 = ys[h1]
                b2 = ys[h2]
            else:
                a1 = xs[h1]
                b1 = ys[h2]
                a2 = ys[h1]
                b2 = xs[h2]

            ra = _uf_find(parent, a1)
            rb = _uf_find(parent, b1)
            if ra != rb:
                if rank[ra] < rank[rb]:
                    ra, rb = rb, ra
                parent[rb] = ra
                if rank[ra] == rank[rb]:
                    rank[ra] += 1
                    undo[top] = rb * 2 + 1
                else:
                    undo[top] = rb * 2
                top += 1
                comp -= 1
            ra = _uf_find(parent, a2)
            rb = _uf_find(parent, b2)
            if ra != rb:
                if rank[ra] < rank[rb]:
                    ra, rb = rb, ra
                parent[rb] = ra
                if rank[ra] == rank[rb]:
                    rank[ra] += 1
                    undo[top] = rb * 2 + 1
                else:
                    undo[top] = rb * 2
                top += 1
                comp -= 1

            if d == m - 1:
                hist[comp] += w
            else:
                d += 1
                p = 0
                while matched[p]:
                    p += 1
                q = p + 1
                while matched[q]:
                    q += 1
                pv[d] = p
                pt[d] = q
                matched[p] = True
                matched[q] = True
                rs[d] = 0
                mk[d] = top


def _hist_numba(xs, ys, tasks, n):
    hist = np.zeros(n + 1, np.int64)
    _hist_kernel(
        np.asarray(xs, np.int64),
        np.asarray(ys, np.int64),
        np.asarray([p for p, _ in tasks], np.int64),
        np.asarray([w for _, w in tasks], np.int64),
        hist,
    )
    return hist


# --------------------------------------------------------------------------
# numpy kernel: Python enumerates the pairings; for each complete pairing
# all 2^m resolutions are swept at once.  Every slot has exactly two glue
# edges (one through its x-side pair, one through its y-side pair), so the
# glue graph is 2-regular and min-label propagation over the two neighbour
# maps converges in at most ⌈n/2⌉ rounds.


def _hist_numpy(xs, ys, tasks, n):
    m = n // 2
    nres = 1 << m
    bits = ((np.arange(nres)[:, None] >> np.arange(m)[None, :]) & 1).astype(bool)
    idx = np.arange(n, dtype=np.int64)
    hist = np.zeros(n + 1, np.int64)

    px = np.empty(n, np.int64)  # pair owning slot s through its x side
    py = np.empty(n, np.int64)
    nbx = np.empty((2, n), np.int64)  # x-side neighbour per resolution bit
    nby = np.empty((2, n), np.int64)
    pairs = [(0, 0)] * m

    def sweep(weight):
        for p, (h1, h2) in enumerate(pairs):
            for a, b in ((h1, h2), (h2, h1)):
                sx, sy = xs[a], ys[a]
                px[sx] = p
                nbx[0, sx] = xs[b]
                nbx[1, sx] = ys[b]
                py[sy] = p
                nby[0, sy] = ys[b]
                nby[1, sy] = xs[b]
        nb_a = np.where(bits[:, px], nbx[1], nbx[0])
        nb_b = np.where(bits[:, py], nby[1], nby[0])
        lab = np.tile(idx, (nres, 1))
        while True:
            nxt = np.minimum(
                lab,
                np.minimum(
                    np.take_along_axis(lab, nb_a, 1),
                    np.take_along_axis(lab, nb_b, 1),
                ),
            )
            if np.array_equal(nxt, lab):
                break
            lab = nxt
        comp = (lab == idx).sum(axis=1)
        np.add.at(hist, comp, weight)

    matched = [False] * n

    def rec(d, weight):
        if d == m:
            sweep(weight)
            return
        p = matched.index(False)
        matched[p] = True
        for q in range(p + 1, n):
            if matched[q]:
                continue
            matched[q] = True
            pairs[d] = (p, q)
            rec(d + 1, weight)
            matched[q] = False
        matched[p] = False

    for partner, weight in tasks:
        matched[0] = True
        matched[partner] = True
        pairs[0] = (0, partner)
        rec(1, weight)
        matched[0] = False
        matched[partner] = False
    return hist


def wick_loop_histogram(ks, reduce_symmetry=True, backend=None):
    """Loop-count histogram of all resolved Wick pairings of tr-powers ``ks``.

    Returns a list ``hist`` with ``hist[c]`` = number of (pairing,
    resolution) leaves gluing the index slots into exactly ``c`` loops.
    The histogram is the moment: ⟨∏ tr M^{k}⟩ = Σ_c hist[c] N^c.
    """
    ks = tuple(sorted((int(k) for k in ks), reverse=True))
    if any(k < 1 for k in ks):
        raise ValueError("trace powers must be positive")
    n = sum(ks)
    if n == 0:
        return [1]
    if n % 2:
        return [0] * (n + 1)
    if n > MAX_HALF_EDGES:
        raise SizeLimit(
            "Wick enumeration over %d half-edges exceeds the bound of %d"
            % (n, MAX_HALF_EDGES)
        )
    xs, ys = _slots(ks)
    tasks = _first_pair_tasks(ks, reduce_symmetry)
    if backend is None:
        backend = active_backend()
    if backend == "numba":
        hist = _hist_numba(xs, ys, tasks, n)
    elif backend == "numpy":
        hist = _hist_numpy(xs, ys, tasks, n)
    else:
        raise ValueError("unknown backend %r" % (backend,))
    hist = [int(c) for c in hist]
    m = n // 2
    expected = (math.factorial(n) // (2**m * math.factorial(m))) * 2**m
    if sum(hist) != expected:
        raise AssertionError(
            "kernel leaf count %d != (n-1)!! * 2^m = %d" % (sum(hist), expected)
        )
    return hist


_MOMENT_CACHE = {}


def wick_moment(ks):
    """⟨∏_j tr M^{k_j}⟩ / ⟨1⟩ as an exact polynomial in N."""
    key = tuple(sorted((int(k) for k in ks), reverse=True))
    out = _MOMENT_CACHE.get(key)
    if out is None:
        out = NPolynomial(wick_loop_histogram(key))
        _MOMENT_CACHE[key] = out
    return out
