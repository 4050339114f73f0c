"""Constant-level recursions and asymptotic cross-checks.

Everything upstream of a float is exact: the u_g (Painleve I), v_g
(Riccati), beta_g (three independent routes), mu_l and nu_l tables all
live in Q or Q[sqrt 3]. Floats only appear at the final comparison layer
(ratio trajectories, Stokes estimates, Darboux versus exact counts), and
all large magnitudes are handled in log space so nothing overflows
before the division that brings a ratio back to O(1).
"""

import math

from .exact.rational import Q, QZERO, QRoot3, SQRT3
from .genus import coefficients

# growth-rate constants for the transseries checks
A_CONST = 8 * math.sqrt(3) / 5
# S/(2 pi i) as a real number, with S = -i * 3^(1/4) / sqrt(pi)
S_OVER_2PII = -(3 ** 0.25) / (2 * math.pi ** 1.5)

_QR3_0 = QRoot3(0, 0)


def _sgn(x):
    """Exact sign (+-1.0 or 0.0) of a rational or a + b*sqrt(3) value,
    never converting big integers to float."""
    if isinstance(x, QRoot3):
        a, b = x.a, x.b
        if b == 0:
            x = a
        elif a == 0:
            x = b
        elif (a > 0) == (b > 0):
            return 1.0 if a > 0 else -1.0
        else:
            # opposite signs: the larger of |a| and |b| sqrt(3) wins
            return _sgn(a) if a * a > 3 * b * b else _sgn(b)
    return 1.0 if x > 0 else (-1.0 if x < 0 else 0.0)


def u_coeffs(G):
    """u_0..u_G from u^2 - (1/6)u'' = z with u = z^(1/2) sum u_g z^(-5g/2).

    Matching powers gives, for k >= 1,
        sum_{g+h=k} u_g u_h = (1/6) u_{k-1} ((1-5(k-1))/2) ((-1-5(k-1))/2).
    """
    u = [Q(1)]
    for k in range(1, G + 1):
        e = 1 - 5 * (k - 1)
        rhs = u[k - 1] * Q(e, 2) * Q(e - 2, 2) / 6
        cross = sum((u[g] * u[k - g] for g in range(1, k)), QZERO)
        u.append((rhs - cross) / 2)
    return u


def v_coeffs(G, u=None):
    """v_0..v_G from 2v' - v^2 + 3u = 0 with v = z^(1/4) sum v_g z^(-5g/4)
    and v_0 = -sqrt(3)."""
    if u is None:
        u = u_coeffs(G // 2 + 1)
    v = [QRoot3(0, -1)]
    for k in range(1, G + 1):
        acc = v[k - 1] * Q(1 - 5 * (k - 1), 2)
        for g in range(1, k):
            acc = acc - v[g] * v[k - g]
        if k % 2 == 0:
            acc = acc + 3 * u[k // 2]
        # acc = 2 v_0 v_k, and 1/v_0 = -sqrt(3)/3
        v.append(acc * QRoot3(0, Q(-1, 3)) * Q(1, 2))
    return v


BETA0 = QRoot3(-36, 0)
BETA1 = QRoot3(0, 6)          # 18/sqrt(3)


def beta_recursion(G):
    """beta_0..beta_G from the five-term recursion (g >= 2); out-of-range
    indices count as zero.

    The published statement runs the triple sum's outer index to g-1 while
    its proof stops at g-2; the two agree identically (the i = g-1 inner
    sum is empty), so there is nothing to choose.
    """
    b = [BETA0, BETA1]
    for g in range(2, G + 1):
        acc = b[g - 2] * Q((5 * g - 8) * (5 * g - 12) * (5 * g - 6), 162)
        if g >= 4:
            c = (5 * g - 6) * (5 * g - 10) * (5 * g - 14) \
                * (5 * g - 18) * (5 * g - 22)
            acc = acc - b[g - 4] * Q(c, 3 ** 6 * 120)
        pair = _QR3_0
        for i in range(1, g):
            pair = pair + b[i] * b[g - i]
        acc = acc + pair * Q(8 * (5 * g - 6), 432)
        skew = _QR3_0
        for i in range(2, g):
            skew = skew + b[i - 2] * b[g - i] * ((5 * i - 8) * (5 * i - 12))
        acc = acc - skew * Q(5 * g - 6, 8 * 3 ** 6)
        triple = _QR3_0
        for i in range(1, g):
            for j in range(1, g - i):
                triple = triple + b[i] * b[j] * b[g - i - j] * (5 * i - 2)
        acc = acc - triple * Q(1, 8 * 3 ** 5)
        b.append(acc * Q(3, 8 * (g - 1)))
    return b[:G + 1]


def beta_from_uv(G, u=None, v=None):
    """beta_k = (2/3)^k 9 ((5k-6) v_{k-1} - 4 u_{k/2}), with v_{-1} = 0 and
    u at half-integer index = 0."""
    if u is None:
        u = u_coeffs(G // 2 + 1)
    if v is None:
        v = v_coeffs(G, u)
    out = []
    for k in range(G + 1):
        acc = _QR3_0
        if k >= 1:
            acc = acc + v[k - 1] * (5 * k - 6)
        if k % 2 == 0:
            acc = acc - 4 * u[k // 2]
        out.append(acc * 9 * Q(2, 3) ** k)
    return out


def beta_from_genus(g, table):
    """beta_g read off the top psi-coefficient of the genus-g series:
    (5g-6) alpha_g, divided by sqrt(3) when g is odd."""
    table.require(g)
    alpha = table.psi(g).get(5 * g - 8)
    w = alpha * (5 * g - 6)
    if g % 2 == 0:
        return QRoot3(w, 0)
    return QRoot3(0, w / 3)    # w / sqrt(3)


def _beta_hat(beta):
    """Scaled coefficients b_n = beta_n (3/2)^n of the series
    beta(z) = sum b_n z^((2-5n)/4)."""
    return [beta[n] * Q(3, 2) ** n for n in range(len(beta))]


def beta_ode_check(order):
    """Exact termwise verification of the quintic beta-ODE

        -(8/15) z b' - (16/15) b + (8/135) b''''' + (2/81) b'' b'
        + (2/81) b''' b + (1/486) b^2 b' = 0

    on the grid z^((2-5n)/4), for n = 0..order, plus the termwise identity
    beta = -36 (u + v').  Returns a report dict; every residual must be
    exactly zero in Q[sqrt 3].
    """
    u = u_coeffs(order // 2 + 1)
    v = v_coeffs(max(order, 1), u)
    beta = beta_recursion(order)
    b = _beta_hat(beta)
    e = [Q(2 - 5 * n, 4) for n in range(order + 1)]

    def dfall(x, m):
        f = Q(1)
        for i in range(m):
            f *= x - i
        return f

    first = None
    for k in range(order + 1):
        r = b[k] * (Q(-8, 15) * e[k] + Q(-16, 15))
        if k >= 4:
            a = k - 4
            r = r + b[a] * (Q(8, 135) * dfall(e[a], 5))
        for a in range(k - 1):
            c = k - 2 - a
            fac = dfall(e[a], 2) * e[c] + dfall(e[a], 3)
            r = r + b[a] * b[c] * (Q(2, 81) * fac)
        for a in range(k + 1):
            for c in range(k - a + 1):
                j = k - a - c
                r = r + b[a] * b[c] * b[j] * (Q(1, 486) * e[j])
        if r and first is None:
            first = {"where": "ode", "n": k, "residual": repr(r)}

    uv_ok = True
    for k in range(order + 1):
        rhs = _QR3_0
        if k % 2 == 0:
            rhs = rhs + u[k // 2]
        if k >= 1:
            rhs = rhs + v[k - 1] * Q(1 - 5 * (k - 1), 4)
        diff = b[k] + rhs * 36
        if diff:
            uv_ok = False
            if first is None:
                first = {"where": "uv-identity", "n": k,
                         "residual": repr(diff)}
            break

    return {
        "check": "beta-ode",
        "order": order,
        "ode_residual_zero": first is None or first["where"] != "ode",
        "uv_identity_match": uv_ok,
        "status": "pass" if first is None else "fail",
        "first_failure": first,
    }


def mu_coeffs(L, u=None):
    """mu_0..mu_L of the u_g transseries, from

        mu_l = 5/(16 sqrt(3) l) { (192/25) sum_{k<l} mu_k u_{(l-k+1)/2}
                                  - (l - 9/10)(l - 1/10) mu_{l-1} },
    with u at half-integer index = 0."""
    if u is None:
        u = u_coeffs(L // 2 + 2)
    mu = [QRoot3(1, 0)]
    for l in range(1, L + 1):
        acc = _QR3_0
        for k in range(l):
            n = l - k + 1
            if n % 2 == 0:
                acc = acc + mu[k] * u[n // 2]
        acc = acc * Q(192, 25)
        acc = acc - mu[l - 1] * (Q(10 * l - 9, 10) * Q(10 * l - 1, 10))
        # 5/(16 sqrt(3) l) = 5 sqrt(3) / (48 l)
        mu.append(acc * QRoot3(0, Q(5, 48 * l)))
    return mu


def nu_coeffs(L, v=None):
    """nu_0..nu_L of the v_g transseries:
    nu_l = -(4/(5l)) sum_{k<l} v_{l+1-k} nu_k, nu_0 = 1."""
    if v is None:
        v = v_coeffs(L + 1)
    nu = [QRoot3(1, 0)]
    for l in range(1, L + 1):
        acc = _QR3_0
        for k in range(l):
            acc = acc + v[l + 1 - k] * nu[k]
        nu.append(acc * Q(-4, 5 * l))
    return nu


def _log_abs_q(x):
    """log |x| for an exact rational or Q[sqrt 3] value of arbitrary size
    (big integers never pass through float)."""
    if isinstance(x, QRoot3):
        a, b = x.a, x.b
        la = _log_abs_q(a) if a else None
        lb = _log_abs_q(b) + 0.5 * math.log(3) if b else None
        if la is None:
            return lb
        if lb is None:
            return la
        hi = max(la, lb)
        s = _sgn(a) * math.exp(la - hi) + _sgn(b) * math.exp(lb - hi)
        return hi + math.log(abs(s))
    n, d = int(x.numerator), int(x.denominator)
    return math.log(abs(n)) - math.log(d)


def asymptotic_ratio_u(g, L):
    """u_g divided by the truncated transseries prediction

        A^(1/2-2g) Gamma(2g-1/2) (S/2 pi i)
            { 1 + sum_{l<=L} mu_l A^l / prod_{m<=l}(2g - 1/2 - m) };

    approaches 1 as g grows, faster for larger L."""
    u = u_coeffs(g)
    mu = mu_coeffs(L) if L else []
    corr = 1.0
    for l in range(1, L + 1):
        denom = 1.0
        for m in range(1, l + 1):
            denom *= (2 * g - 0.5 - m)
        corr += float(mu[l]) * A_CONST ** l / denom
    log_pred = (0.5 - 2 * g) * math.log(A_CONST) + math.lgamma(2 * g - 0.5)
    pred_sign = math.copysign(1.0, S_OVER_2PII * corr)
    log_pred += math.log(abs(S_OVER_2PII * corr))
    ug = u[g]
    return _sgn(ug) * pred_sign * math.exp(_log_abs_q(ug) - log_pred)


def stokes_estimate(g_max, L, v=None):
    """Estimate of the unknown constant S'/(2 pi i) for the v_g growth:

        v_g (A/2)^g / Gamma(g) / { 1 + sum_{l<=L} nu_l (A/2)^l
                                      / prod_{m<=l}(g - m) }
    at g = g_max."""
    if v is None:
        v = v_coeffs(g_max)
    nu = nu_coeffs(L) if L else []
    g = g_max
    half_a = A_CONST / 2
    corr = 1.0
    for l in range(1, L + 1):
        denom = 1.0
        for m in range(1, l + 1):
            denom *= (g - m)
        corr += float(nu[l]) * half_a ** l / denom
    vg = v[g]
    log_est = _log_abs_q(vg) + g * math.log(half_a) - math.lgamma(g) \
        - math.log(abs(corr))
    return _sgn(vg) * math.copysign(1.0, corr) * math.exp(log_est)


def stokes_report(g_list, L):
    """Stokes estimates across several g, for stabilization checks."""
    g_list = sorted(g_list)
    v = v_coeffs(max(g_list))
    traj = [{"g": g, "estimate": stokes_estimate(g, L, v)} for g in g_list]
    return {"check": "stokes-estimate", "l_max": L, "trajectory": traj}


def map_constants(G):
    """The t_g and p_g constants implied by the u/v tables.

    Two published u_g <-> t_g conversions disagree; both are reported:
      variant A:  u_g = -2^(g-2) Gamma((5g-1)/2) t_g
      variant B:  u_g =  2^(g-2) Gamma((5g-1)/4) t_g
    p has an entry only for odd g (p_(g+1)/2 must have integer index),
    via v_g = 2^((g-3)/2) Gamma((5g-1)/4) p_(g+1)/2.
    """
    u = u_coeffs(G)
    v = v_coeffs(G, u_coeffs(G // 2 + 1))
    rows = []
    for g in range(1, G + 1):
        ug = u[g]
        sign = _sgn(ug)
        lug = _log_abs_q(ug)
        ta = -sign * math.exp(
            lug - (g - 2) * math.log(2) - math.lgamma((5 * g - 1) / 2))
        tb = sign * math.exp(
            lug - (g - 2) * math.log(2) - math.lgamma((5 * g - 1) / 4))
        row = {"g": g, "t_variant_A": ta, "t_variant_B": tb,
               "p_index": None, "p": None}
        if g % 2 == 1:
            vg = v[g]
            lp = _log_abs_q(vg) - (g - 3) / 2 * math.log(2) \
                - math.lgamma((5 * g - 1) / 4)
            row["p_index"] = (g + 1) // 2
            row["p"] = _sgn(vg) * math.exp(lp)
        rows.append(row)
    return rows


def _darboux_log(g, n):
    """log of the beta-free part of the Darboux approximation to the n-th
    coefficient at genus g."""
    q = (5 * g - 6) / 4
    return (q * math.log(1.5) + 5 * (g - 2) / 4 * math.log(n)
            - math.lgamma(q) + n * math.log(12 * math.sqrt(3)))


def darboux_estimate(g, n, beta=None):
    """Float value of the Darboux approximation
    (beta_g/(5g-6)) (3/2)^((5g-6)/4) n^(5(g-2)/4) (12 sqrt 3)^n / Gamma(.);
    saturates to +-inf past double range (use darboux_compare for ratios)."""
    if beta is None:
        beta = beta_recursion(g)
    lg = _darboux_log(g, n) + _log_abs_q(beta[g]) - math.log(5 * g - 6)
    if lg > 700:
        return _sgn(beta[g]) * math.inf
    return _sgn(beta[g]) * math.exp(lg)


def darboux_compare(g, n, table, beta=None):
    """Exact coefficient ell_g(n) divided by the Darboux approximation,
    computed in log space (safe for n in the hundreds)."""
    if beta is None:
        beta = beta_recursion(g)
    exact = coefficients(g, n, table)[n - 1]
    if exact == 0:
        return 0.0
    log_est = _darboux_log(g, n) + _log_abs_q(beta[g]) \
        - math.log(5 * g - 6)
    return _sgn(beta[g]) * _sgn(exact) * math.exp(_log_abs_q(exact) - log_est)


class ConstTables:
    """Immutable bundle of the exact constant tables."""

    __slots__ = ("u", "v", "beta", "mu", "nu", "conventions")

    def __init__(self, u, v, beta, mu, nu):
        self.u = u
        self.v = v
        self.beta = beta
        self.mu = mu
        self.nu = nu
        self.conventions = {
            "v_exponent_grid": "z^(-5g/4)",
            "v_minus_one": "0",
            "u_half_integer": "0",
            "beta_series_scaling": "(3/2)^n on z^(-(5n-2)/4)",
        }


def build_const_tables(g_max, l_max=None):
    """Build and cross-validate all constant tables through g_max
    (transseries tables through l_max, default g_max)."""
    if l_max is None:
        l_max = g_max
    u = u_coeffs(max(g_max, l_max // 2 + 2))
    v = v_coeffs(max(g_max, l_max + 1), u)
    beta = beta_recursion(g_max)
    mu = mu_coeffs(l_max, u)
    nu = nu_coeffs(l_max, v)
    assert u[0] == 1 and v[0] == QRoot3(0, -1)
    assert beta[0] == BETA0 and (g_max < 1 or beta[1] == BETA1)
    assert mu[0] == QRoot3(1, 0) and nu[0] == QRoot3(1, 0)
    for g, x in enumerate(v):
        # v_g rational for odd g, a rational multiple of sqrt(3) for even g
        assert (x.a == 0) == (g % 2 == 0), ("v parity", g)
    for g, x in enumerate(beta):
        assert (x.a == 0) == (g % 2 == 1), ("beta parity", g)
    return ConstTables(u[:g_max + 1], v[:g_max + 1], beta, mu, nu)
