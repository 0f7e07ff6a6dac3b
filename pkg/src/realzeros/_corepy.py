"""Pure-Python (numpy) backend: node sums for the transform quadratures and
the kernel k-sums.

Every `*_sum` function evaluates an integrand on the trapezoid comb
u = start + k*step (k = 0..n-1) and returns (sum_re, sum_im, sum_abs).
The abs channel feeds the round-off floor in the refinement driver.

All exponentials are combined before exponentiation so that individual
factors (cosh of a large argument against a double-exponentially small
e^{-a cosh u}) never overflow; see _exp_cosh/_exp_sinh.
"""

from __future__ import annotations

import math

import numpy as np

backend_name = "python"

_SPLIT = 30.0  # |w| above which cosh/sinh switch to the exp-combined form


def _exp_cosh(E, w):
    # e^E * cosh(w) with E <= 0 allowed to be hugely negative
    aw = np.abs(w)
    small = aw <= _SPLIT
    safe_aw = np.where(small, aw, 0.0)
    direct = np.exp(E) * np.cosh(safe_aw)
    combined = 0.5 * np.exp(E + aw) * (1.0 + np.exp(-2.0 * aw))
    return np.where(small, direct, combined)


def _exp_sinh(E, w):
    # e^E * sinh(w), sign-aware
    aw = np.abs(w)
    sign = np.sign(w)
    small = aw <= _SPLIT
    safe_aw = np.where(small, aw, 0.0)
    direct = np.exp(E) * np.sinh(safe_aw)
    combined = 0.5 * np.exp(E + aw) * (1.0 - np.exp(-2.0 * aw))
    return sign * np.where(small, direct, combined)


def kbessel_sum(a, nu_re, nu_im, start, step, n):
    """Sum of e^{-a cosh u} cosh(nu u) over the comb; nu = nu_re + i nu_im."""
    if n <= 0:
        return 0.0, 0.0, 0.0
    u = start + step * np.arange(n)
    with np.errstate(under="ignore"):
        E = -a * np.cosh(u)
        cq = np.cos(nu_im * u)
        sq = np.sin(nu_im * u)
        ec = _exp_cosh(E, nu_re * u)
        es = _exp_sinh(E, nu_re * u)
        re = ec * cq
        im = es * sq
        ab = np.hypot(re, im)
    return float(re.sum()), float(im.sum()), float(ab.sum())


def coshw_sum(A, B, p, q, m, c, z_re, z_im, start, step, n):
    """Sum of [A cosh(pu) - B cosh(qu)] e^{-c cosh(mu)} cos(zu) over the comb.

    cos(zu) for z = x+iy expands to cos(xu)cosh(yu) - i sin(xu)sinh(yu);
    the cosh-products are split via product-to-sum before exponentiation.
    """
    if n <= 0:
        return 0.0, 0.0, 0.0
    u = start + step * np.arange(n)
    with np.errstate(under="ignore"):
        E = -c * np.cosh(m * u)
        cx = np.cos(z_re * u)
        sx = np.sin(z_re * u)

        def cc(g):
            # e^E cosh(gu) cosh(yu)
            return 0.5 * (_exp_cosh(E, (g + z_im) * u) + _exp_cosh(E, (g - z_im) * u))

        def cs(g):
            # e^E cosh(gu) sinh(yu)
            return 0.5 * (_exp_sinh(E, (z_im + g) * u) + _exp_sinh(E, (z_im - g) * u))

        br_c = A * cc(p) - (B * cc(q) if B != 0.0 else 0.0)
        br_s = A * cs(p) - (B * cs(q) if B != 0.0 else 0.0)
        re = cx * br_c
        im = -sx * br_s
        ab = np.hypot(re, im)
    return float(re.sum()), float(im.sum()), float(ab.sum())


def phi_values(u, nmax):
    """Theta-sum values on an array of nodes u >= 0 (no cancellation there)."""
    u = np.asarray(u, dtype=float)
    j = np.arange(1, nmax + 1, dtype=float)
    jj = (j * j * math.pi)[None, :]
    with np.errstate(under="ignore"):
        e2 = np.exp(2.0 * u)[:, None]
        damp = np.exp(-jj * e2)
        grow = (4.0 * (j**4) * math.pi**2)[None, :] * np.exp(4.5 * u)[:, None]
        mid = (6.0 * (j**2) * math.pi)[None, :] * np.exp(2.5 * u)[:, None]
        vals = ((grow - mid) * damp).sum(axis=1)
    return vals


def phi_sum(z_re, z_im, start, step, n, nmax):
    """Sum of Phi(u) cos(zu) over the comb (u >= 0)."""
    if n <= 0:
        return 0.0, 0.0, 0.0
    u = start + step * np.arange(n)
    phi = phi_values(u, nmax)
    with np.errstate(under="ignore"):
        re = phi * np.cos(z_re * u) * np.cosh(z_im * u)
        im = -phi * np.sin(z_re * u) * np.sinh(z_im * u)
        ab = np.hypot(re, im)
    return float(re.sum()), float(im.sum()), float(ab.sum())


def hyp2f1_series(a, b, c, w, rtol, kcap, kmin):
    """Direct Gauss series at argument |w| <= ~0.5. Terminating cases stop
    exactly (a zero numerator factor kills the tail). kmin delays the
    convergence test past any small-denominator resonance when c < 0, so a
    spike at c+k near 0 cannot be skipped by an early exit.

    Returns (value, converged, terms_used).
    """
    term = 1.0
    terms = [1.0]
    acc = 1.0
    k = 0
    ok = 0
    while k < kcap:
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1.0)) * w
        k += 1
        if term == 0.0:
            ok = 1
            break
        terms.append(term)
        acc += term
        if k >= kmin and abs(term) <= rtol * max(abs(acc), 1e-300):
            nxt = term * (a + k) * (b + k) / ((c + k) * (k + 1.0)) * w
            if abs(nxt) <= abs(term):
                ok = 1
                break
    return math.fsum(terms), ok, k


def f_series_sums(t, y, rtol, kcap):
    """k-sums behind the f kernel and its first two y-derivatives.

    A0 = sum_k T_k,  T_k = [(y+1)_k]^2 (1-t)^k / (k! (k+1)!)
    A1 = dA0/dy = sum_k T_k * 2 S1_k,    S1_k = sum_{j<=k} 1/(y+j)
    A2 = d2A0/dy2 = sum_k T_k (4 S1_k^2 - 2 S2_k)

    so that f_t(y) = y^2 t^y A0 and derivatives follow by the product rule.
    Negative-integer y is handled exactly (T_k terminates; the A2 tail keeps
    its finite limit). The polynomial factor k^(2y-1) in T_k can outrun the
    first geometric estimate, so the sweep extends in doubling chunks until
    both the T-tail and the surviving A2-tail pass the bound or kcap is hit.
    Returns (A0, A1, A2, terms_used, converged).
    """
    lt = math.log1p(-t)  # log(1-t) < 0
    w = 1.0 - t
    target = min(max(int(46.0 / -lt) + 140, 60), kcap)
    A0 = 1.0  # k = 0 term
    A1 = 0.0
    A2 = 0.0
    T_c, s1_c, s2_c, G_c = 1.0, 0.0, 0.0, 1.0
    m_seen = False
    used = 0
    converged = 0
    gtail = w / t  # geometric tail factor sum_{i>0} w^i / (1 - w)
    while True:
        j = np.arange(used + 1, target + 1, dtype=float)
        yj = y + j
        s = w / (j * (j + 1.0))
        with np.errstate(divide="ignore", under="ignore"):
            if m_seen:
                # past the terminated part only the A2 limit terms survive
                G = G_c * np.cumprod(yj * yj * s)
                A2 += 2.0 * float(G.sum())
                G_c = float(G[-1])
                T_last = 0.0
                V_last = abs(2.0 * G_c)
            else:
                hits = np.nonzero(np.abs(yj) < 1e-12)[0]
                if hits.size:
                    # y = -j at local index mi: terms beyond vanish; their U
                    # limit is 0 and their V limit is
                    # 2 * s_m * prod_{j' != j} (y+j')^2 s_j'.
                    mi = int(hits[0])
                    yj_safe = yj.copy()
                    yj_safe[mi] = 1.0
                    s1 = s1_c + np.cumsum(1.0 / yj_safe)
                    s2 = s2_c + np.cumsum(1.0 / (yj_safe * yj_safe))
                    T = T_c * np.cumprod(yj * yj * s)
                    U = T * 2.0 * s1
                    V = T * (4.0 * s1 * s1 - 2.0 * s2)
                    fac = yj * yj * s
                    fac[mi] = s[mi]
                    G = G_c * np.cumprod(fac)
                    U[mi:] = 0.0
                    V[mi:] = 2.0 * G[mi:]
                    m_seen = True
                    G_c = float(G[-1])
                    T_c, s1_c, s2_c = 0.0, float(s1[-1]), float(s2[-1])
                    T_last = 0.0
                    V_last = abs(2.0 * G_c)
                else:
                    s1 = s1_c + np.cumsum(1.0 / yj)
                    s2 = s2_c + np.cumsum(1.0 / (yj * yj))
                    T = T_c * np.cumprod(yj * yj * s)
                    U = T * 2.0 * s1
                    V = T * (4.0 * s1 * s1 - 2.0 * s2)
                    T_c, s1_c, s2_c = float(T[-1]), float(s1[-1]), float(s2[-1])
                    G_c = T_c  # keeps the V-limit product aligned across chunks
                    T_last = abs(T_c)
                    V_last = abs(float(V[-1]))
                A0 += float(T.sum())
                A1 += float(U.sum())
                A2 += float(V.sum())
        used = target
        ok_t = T_last * gtail <= rtol * max(abs(A0), 1e-300)
        ok_v = V_last * gtail <= rtol * max(abs(A2), abs(A0), 1e-300)
        if ok_t and ok_v:
            converged = 1
            break
        if used >= kcap:
            break
        target = min(kcap, used * 2 + 200)
    return A0, A1, A2, used, converged
