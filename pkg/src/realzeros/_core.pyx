# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend: the same node-sum contracts as _corepy, as C loops.

Each *_sum function walks the trapezoid comb u = start + k*step and
returns (sum_re, sum_im, sum_abs); the abs channel feeds the round-off
floor in the refinement driver. Exponentials are combined before
exponentiation so huge cosh factors against double-exponentially small
e^{-a cosh u} never overflow.
"""

import numpy as np

from libc.math cimport cos, cosh, exp, fabs, hypot, log1p, sin, sinh

backend_name = "cython"

cdef double _SPLIT = 30.0
cdef double _PI = 3.141592653589793238462643383279502884


cdef inline double _exp_cosh(double E, double w) noexcept nogil:
    # e^E * cosh(w) with E allowed to be hugely negative
    cdef double aw = fabs(w)
    if aw <= _SPLIT:
        return exp(E) * cosh(aw)
    return 0.5 * exp(E + aw) * (1.0 + exp(-2.0 * aw))


cdef inline double _exp_sinh(double E, double w) noexcept nogil:
    # e^E * sinh(w), sign-aware
    cdef double aw = fabs(w)
    if aw <= _SPLIT:
        return exp(E) * sinh(w)
    if w > 0.0:
        return 0.5 * exp(E + aw) * (1.0 - exp(-2.0 * aw))
    return -0.5 * exp(E + aw) * (1.0 - exp(-2.0 * aw))


cdef inline double _acc(double s, double x, double* comp) noexcept nogil:
    # one Neumaier step: returns the new running sum, updates *comp
    cdef double tsum = s + x
    if fabs(s) >= fabs(x):
        comp[0] += (s - tsum) + x
    else:
        comp[0] += (x - tsum) + s
    return tsum


def kbessel_sum(double a, double nu_re, double nu_im,
                double start, double step, long n):
    """Sum of e^{-a cosh u} cosh(nu u) over the comb; nu = nu_re + i nu_im."""
    cdef double sre = 0.0, sim = 0.0, sab = 0.0
    cdef double cre = 0.0, cim = 0.0
    cdef double u, E, ec, es, re_k, im_k
    cdef long k
    if n <= 0:
        return 0.0, 0.0, 0.0
    with nogil:
        for k in range(n):
            u = start + step * k
            E = -a * cosh(u)
            ec = _exp_cosh(E, nu_re * u)
            es = _exp_sinh(E, nu_re * u)
            re_k = ec * cos(nu_im * u)
            im_k = es * sin(nu_im * u)
            sre = _acc(sre, re_k, &cre)
            sim = _acc(sim, im_k, &cim)
            sab += hypot(re_k, im_k)
    return sre + cre, sim + cim, sab


def coshw_sum(double A, double B, double p, double q, double m, double c,
              double z_re, double z_im, double start, double step, long n):
    """Sum of [A cosh(pu) - B cosh(qu)] e^{-c cosh(mu)} cos(zu) over the comb.

    cos(zu) for z = x+iy expands to cos(xu)cosh(yu) - i sin(xu)sinh(yu);
    the cosh-products are split via product-to-sum before exponentiation.
    """
    cdef double sre = 0.0, sim = 0.0, sab = 0.0
    cdef double cre = 0.0, cim = 0.0
    cdef double u, E, cx, sx, br_c, br_s, re_k, im_k
    cdef long k
    if n <= 0:
        return 0.0, 0.0, 0.0
    with nogil:
        for k in range(n):
            u = start + step * k
            E = -c * cosh(m * u)
            cx = cos(z_re * u)
            sx = sin(z_re * u)
            br_c = A * 0.5 * (_exp_cosh(E, (p + z_im) * u)
                              + _exp_cosh(E, (p - z_im) * u))
            br_s = A * 0.5 * (_exp_sinh(E, (z_im + p) * u)
                              + _exp_sinh(E, (z_im - p) * u))
            if B != 0.0:
                br_c -= B * 0.5 * (_exp_cosh(E, (q + z_im) * u)
                                   + _exp_cosh(E, (q - z_im) * u))
                br_s -= B * 0.5 * (_exp_sinh(E, (z_im + q) * u)
                                   + _exp_sinh(E, (z_im - q) * u))
            re_k = cx * br_c
            im_k = -sx * br_s
            sre = _acc(sre, re_k, &cre)
            sim = _acc(sim, im_k, &cim)
            sab += hypot(re_k, im_k)
    return sre + cre, sim + cim, sab


cdef inline double _phi_at(double u, long nmax) noexcept nogil:
    cdef double e2 = exp(2.0 * u)
    cdef double e45 = exp(4.5 * u)
    cdef double e25 = exp(2.5 * u)
    cdef double acc = 0.0
    cdef double jd, jj, damp
    cdef long j
    for j in range(1, nmax + 1):
        jd = <double> j
        jj = jd * jd * _PI
        damp = exp(-jj * e2)
        if damp == 0.0:
            break
        acc += (4.0 * jd * jd * jd * jd * _PI * _PI * e45
                - 6.0 * jd * jd * _PI * e25) * damp
    return acc


def phi_values(u, long nmax):
    """Theta-sum values on an array of nodes u >= 0 (no cancellation there)."""
    cdef double[::1] uu = np.ascontiguousarray(u, dtype=np.float64)
    cdef long n = uu.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef long i
    with nogil:
        for i in range(n):
            ov[i] = _phi_at(uu[i], nmax)
    return out


def phi_sum(double z_re, double z_im, double start, double step,
            long n, long nmax):
    """Sum of Phi(u) cos(zu) over the comb (u >= 0)."""
    cdef double sre = 0.0, sim = 0.0, sab = 0.0
    cdef double cre = 0.0, cim = 0.0
    cdef double u, phi, re_k, im_k
    cdef long k
    if n <= 0:
        return 0.0, 0.0, 0.0
    with nogil:
        for k in range(n):
            u = start + step * k
            phi = _phi_at(u, nmax)
            re_k = phi * cos(z_re * u) * cosh(z_im * u)
            im_k = -phi * sin(z_re * u) * sinh(z_im * u)
            sre = _acc(sre, re_k, &cre)
            sim = _acc(sim, im_k, &cim)
            sab += hypot(re_k, im_k)
    return sre + cre, sim + cim, sab


def hyp2f1_series(double a, double b, double c, double w,
                  double rtol, long kcap, long kmin):
    """Direct Gauss series at argument |w| <= ~0.5. Terminating cases stop
    exactly (a zero numerator factor kills the tail). kmin delays the
    convergence test past any small-denominator resonance when c < 0, so a
    spike at c+k near 0 cannot be skipped by an early exit.

    Returns (value, converged, terms_used).
    """
    cdef double term = 1.0
    cdef double acc = 1.0
    # Neumaier-compensated running sum stands in for exact summation
    cdef double s = 1.0, comp = 0.0, tsum, nxt, den
    cdef long k = 0
    cdef int ok = 0
    while k < kcap:
        den = (c + k) * (k + 1.0)
        if den == 0.0:
            raise ZeroDivisionError("hypergeometric series hit c + k = 0")
        term = term * (a + k) * (b + k) / den * w
        k += 1
        if term == 0.0:
            ok = 1
            break
        tsum = s + term
        if fabs(s) >= fabs(term):
            comp += (s - tsum) + term
        else:
            comp += (term - tsum) + s
        s = tsum
        acc += term
        if k >= kmin and fabs(term) <= rtol * max(fabs(acc), 1e-300):
            den = (c + k) * (k + 1.0)
            if den == 0.0:
                raise ZeroDivisionError("hypergeometric series hit c + k = 0")
            nxt = term * (a + k) * (b + k) / den * w
            if fabs(nxt) <= fabs(term):
                ok = 1
                break
    return s + comp, ok, k


def f_series_sums(double t, double y, double rtol, long kcap):
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
    cdef double lt = log1p(-t)
    cdef double w = 1.0 - t
    cdef long target = <long> (46.0 / -lt) + 140
    if target < 60:
        target = 60
    if target > kcap:
        target = kcap
    cdef double A0 = 1.0, A1 = 0.0, A2 = 0.0
    cdef double T_c = 1.0, s1_c = 0.0, s2_c = 0.0, G_c = 1.0
    cdef bint m_seen = False
    cdef long used = 0
    cdef int converged = 0
    cdef double gtail = w / t
    cdef double T_last = 0.0, V_last = 0.0
    cdef double jd, yj, sfac, V
    cdef long j
    while True:
        with nogil:
            for j in range(used + 1, target + 1):
                jd = <double> j
                yj = y + jd
                sfac = w / (jd * (jd + 1.0))
                if m_seen:
                    # past the terminated part only the A2 limit survives
                    G_c *= yj * yj * sfac
                    A2 += 2.0 * G_c
                elif fabs(yj) < 1e-12:
                    # termination index: this T vanishes, its U limit is 0
                    # and the V limit continues through the factor s alone
                    T_c *= yj * yj * sfac
                    A0 += T_c
                    G_c *= sfac
                    A2 += 2.0 * G_c
                    m_seen = True
                    T_c = 0.0
                else:
                    s1_c += 1.0 / yj
                    s2_c += 1.0 / (yj * yj)
                    T_c *= yj * yj * sfac
                    G_c = T_c
                    V = T_c * (4.0 * s1_c * s1_c - 2.0 * s2_c)
                    A0 += T_c
                    A1 += T_c * 2.0 * s1_c
                    A2 += V
                    V_last = fabs(V)
        used = target
        if m_seen:
            T_last = 0.0
            V_last = fabs(2.0 * G_c)
        else:
            T_last = fabs(T_c)
        if (T_last * gtail <= rtol * max(fabs(A0), 1e-300)
                and V_last * gtail <= rtol * max(fabs(A2), fabs(A0), 1e-300)):
            converged = 1
            break
        if used >= kcap:
            break
        target = used * 2 + 200
        if target > kcap:
            target = kcap
    return A0, A1, A2, used, converged
