"""Quadrature engines, complex gamma, and the real-parameter Gauss 2F1.

The semi-infinite engine is the plain trapezoid rule with successive halving:
every integrand fed to it is even around 0 and decays double-exponentially,
which makes the trapezoid rule spectrally accurate there. The unit-interval
engine maps (0,1) through a tanh-sinh (double-exponential) node chart so both
endpoints are tamed; integrands may blow up mildly at t=0 as t^{y-1} because
callers always carry a factor that dies super-exponentially there.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._backend import core
from .errors import (
    DomainError,
    EvaluationError,
    NonConvergence,
    ParameterError,
    PoleError,
)

ComplexValue = complex

_EPS = float(np.finfo(float).eps)
_ROUNDOFF_FLOOR = 8.0 * _EPS


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-300
    rel_tol: float = 1e-13
    max_refinements: int = 24
    truncation_guard: float = 1e-300  # integrand magnitude below which tails are cut

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ParameterError("tolerances must be positive")
        if self.max_refinements < 1:
            raise ParameterError("max_refinements must be >= 1")


DEFAULT_SPEC = QuadratureSpec()


def _refine_comb(eval_comb, lo, hi, f_lo, f_hi, spec: QuadratureSpec):
    """Trapezoid-with-halving driver on [lo, hi].

    eval_comb(start, step, n) must return (complex_sum, abs_sum) over the
    comb start + k*step. Convergence: successive difference under
    max(abs_tol, rel_tol*|T|, roundoff floor from the |integrand| mass).
    """
    span = hi - lo
    n0 = max(8, int(round(span / 0.5)))
    h = span / n0
    s, sa = eval_comb(lo, h, n0 + 1)
    t_val = h * (s - 0.5 * (f_lo + f_hi))
    t_abs = h * sa
    n = n0
    for ref in range(spec.max_refinements):
        h2 = 0.5 * h
        s_odd, sa_odd = eval_comb(lo + h2, h, n)
        t_new = 0.5 * t_val + h2 * s_odd
        t_abs = 0.5 * t_abs + h2 * sa_odd
        diff = abs(t_new - t_val)
        t_val, h, n = t_new, h2, 2 * n
        floor = _ROUNDOFF_FLOOR * t_abs
        if ref >= 1 and diff <= max(spec.abs_tol, spec.rel_tol * abs(t_val), floor):
            return t_val, diff
    raise NonConvergence(
        "refinement limit %d reached (last diff %.3e, |I| %.3e)"
        % (spec.max_refinements, diff, abs(t_val))
    )


def _scalar_comb(f) -> Callable:
    def eval_comb(start, step, n):
        re, im, ab = [], [], []
        for k in range(n):
            v = complex(f(start + k * step))
            re.append(v.real)
            im.append(v.imag)
            ab.append(abs(v))
        return complex(math.fsum(re), math.fsum(im)), math.fsum(ab)

    return eval_comb


def _maybe_real(v: complex):
    if v.imag == 0.0:
        return v.real
    return v


def integrate_semi_infinite(f, spec: QuadratureSpec = DEFAULT_SPEC):
    """Integral of f over [0, inf) for integrands that decay at least
    double-exponentially. Returns (value, error_estimate).

    The truncation point U is the first integer where |f| falls under
    spec.truncation_guard.
    """
    f0 = complex(f(0.0))
    u_cut = None
    for u in range(1, 61):
        if abs(complex(f(float(u)))) < spec.truncation_guard:
            u_cut = float(u)
            break
    if u_cut is None:
        raise NonConvergence("no truncation point with |f| < guard by u = 60")
    f_hi = complex(f(u_cut))
    val, err = _refine_comb(_scalar_comb(f), 0.0, u_cut, f0, f_hi, spec)
    return _maybe_real(val), err


def _ts_node(w: float):
    """tanh-sinh chart: w -> (t, 1-t, weight dt/dw)."""
    g = 0.5 * math.pi * math.sinh(w)
    cg = math.cosh(g)
    t = 1.0 / (1.0 + math.exp(-2.0 * g))
    one_minus = 1.0 / (1.0 + math.exp(2.0 * g))
    wt = 0.25 * math.pi * math.cosh(w) / (cg * cg)
    return t, one_minus, wt


_TS_RIGHT = 3.1  # keeps 1-t above the float rounding edge
_TS_LEFT_MAX = 6.0  # keeps t itself away from underflow


def integrate_unit_interval(f, spec: QuadratureSpec = DEFAULT_SPEC):
    """Integral of f over (0,1) via tanh-sinh nodes. Returns (value, err).

    Raises DomainError when f produces a non-finite value at a node.
    """

    def phi(w: float) -> float:
        t, _, wt = _ts_node(w)
        v = f(t)
        if not math.isfinite(v):
            raise DomainError("integrand non-finite at t=%.17g" % t)
        return v * wt

    # coarse scale, then extend the left tail until contributions vanish
    coarse = max(abs(phi(w)) for w in np.linspace(-3.0, 3.0, 25))
    left = 3.1
    while left < _TS_LEFT_MAX:
        tail = abs(phi(-left))
        if tail < max(spec.truncation_guard, 1e-18 * coarse, spec.abs_tol * 1e-3):
            break
        left += 0.3
    f_lo = phi(-left)
    f_hi = phi(_TS_RIGHT)
    val, err = _refine_comb(_scalar_comb(phi), -left, _TS_RIGHT, f_lo, f_hi, spec)
    return _maybe_real(val), err


# ---------------------------------------------------------------------------
# complex gamma (Lanczos, g = 7, 9 terms)

_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.9189385332046727


def _loggamma_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    refl = z.real < 0.5
    zz = np.where(refl, 1.0 - z, z)
    x = zz - 1.0
    ag = np.full(zz.shape, _LANCZOS[0], dtype=complex)
    for i in range(1, 9):
        ag = ag + _LANCZOS[i] / (x + i)
    tt = x + 7.5
    base = (x + 0.5) * np.log(tt) - tt + (_LOG_SQRT_2PI + np.log(ag))
    if not refl.any():
        return base
    # reflection log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z),
    # with log sin evaluated on the upper half plane and conjugated back
    zr = np.where(z.imag >= 0.0, z, np.conj(z))
    lsp = np.empty(zz.shape, dtype=complex)
    small = zr.imag < 20.0
    if small.any():
        lsp[small] = np.log(np.sin(np.pi * zr[small]))
    big = ~small
    if big.any():
        zb = zr[big]
        lsp[big] = (
            -1j * np.pi * zb
            + np.log(1.0 - np.exp(2j * np.pi * zb))
            + (math.log(0.5) + 0.5j * np.pi)
        )
    lsp = np.where(z.imag >= 0.0, lsp, np.conj(lsp))
    return np.where(refl, math.log(math.pi) - lsp - base, base)


def loggamma(z: complex) -> complex:
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real):
        raise PoleError("log gamma pole at %g" % z.real)
    return complex(_loggamma_array(np.array([z]))[0])


def complex_gamma(s: ComplexValue) -> ComplexValue:
    """Gamma(s) off the real axis too; raises PoleError at 0, -1, -2, ..."""
    s = complex(s)
    if s.imag == 0.0 and s.real <= 0.0 and s.real == round(s.real):
        raise PoleError("gamma pole at %g" % s.real)
    return _maybe_real(cmath.exp(loggamma(s)))


def _is_nonpos_int(x: float, tol: float = 1e-12) -> bool:
    return x <= tol and abs(x - round(x)) < tol


def _lgamma_signed(x: float):
    """(log|Gamma(x)|, sign) for real non-pole x."""
    if x > 0.0:
        return math.lgamma(x), 1.0
    sign = 1.0 if (math.floor(x) % 2 == 0) else -1.0
    return math.lgamma(x), sign


def digamma(x: float) -> float:
    """Real digamma: reflection below 1/2, recurrence up to 8, then the
    Bernoulli asymptotic tail."""
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise PoleError("digamma pole at %g" % x)
    res = 0.0
    if x < 0.5:
        res -= math.pi / math.tan(math.pi * x)
        x = 1.0 - x
    while x < 16.0:
        res -= 1.0 / x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    tail = inv2 * (
        1.0 / 12.0
        - inv2
        * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0)))
    )
    return res + math.log(x) - 0.5 * inv - tail


def _gamma_ratio(nums, dens) -> float:
    """prod Gamma(nums) / prod Gamma(dens) with zero-at-denominator-pole
    semantics (the reciprocal gamma vanishes there)."""
    acc = 0.0
    sign = 1.0
    for x in nums:
        if _is_nonpos_int(x):
            raise EvaluationError("gamma pole in numerator at %g" % x)
        lg, sg = _lgamma_signed(x)
        acc += lg
        sign *= sg
    for x in dens:
        if _is_nonpos_int(x):
            return 0.0
        lg, sg = _lgamma_signed(x)
        acc -= lg
        sign *= sg
    if acc > 709.0:
        raise EvaluationError("gamma ratio overflow (log %.3g)" % acc)
    return sign * math.exp(acc)


# ---------------------------------------------------------------------------
# Gauss 2F1 with real parameters on 0 <= w < 1

_SERIES_RTOL = 2e-17
_SERIES_KCAP = 200000
_NUDGE = 1e-5


def _series(a: float, b: float, c: float, w: float) -> float:
    kmin = int(math.ceil(-c)) + 2 if c < 0.0 else 0
    val, ok, _ = core.hyp2f1_series(a, b, c, w, _SERIES_RTOL, _SERIES_KCAP, kmin)
    if not ok:
        raise NonConvergence("2F1 series stalled at %d terms" % _SERIES_KCAP)
    return val


def _connection(a: float, b: float, c: float, v: float) -> float:
    # v = 1 - w, both series run at argument v <= 1/2
    d = c - a - b
    c1 = _gamma_ratio((c, d), (c - a, c - b))
    c2 = _gamma_ratio((c, -d), (a, b))
    total = 0.0
    if c1 != 0.0:
        total += c1 * _series(a, b, 1.0 - d, v)
    if c2 != 0.0:
        total += c2 * (v**d) * _series(c - a, c - b, 1.0 + d, v)
    return total


def _connection_integer(a: float, b: float, c: float, m: int, v: float) -> float:
    """Connection value when c - a - b is exactly the integer m.

    The two standard connection series collide in this case; the classical
    resolution replaces them with one series carrying a log(v) factor and
    digamma weights, plus (for m >= 1) a finite part. m < 0 is lifted to
    -m via the Euler transformation first. Requires v <= 1/2 and none of
    a, b, c-a, c-b a nonpositive integer (callers dispatch those exactly).
    """
    if m < 0:
        return v ** float(m) * _connection_integer(c - a, c - b, c, -m, v)
    log_v = math.log(v)
    total = 0.0
    if m >= 1:
        term = _gamma_ratio((float(m), c), (a + m, b + m))
        fin = term
        for n in range(m - 1):
            term *= (a + n) * (b + n) * v / ((n + 1.0) * (1.0 - m + n))
            fin += term
        total += fin
    pref = _gamma_ratio((c,), (a, b)) * (-1.0 if m % 2 else 1.0) * v**m
    if m > 170:
        pref = 0.0  # v**m / m! is far below the underflow floor
    if pref != 0.0:
        psi_1 = digamma(1.0)
        psi_m1 = digamma(m + 1.0)
        psi_a = digamma(a + m)
        psi_b = digamma(b + m)
        term = 1.0 / math.factorial(m)
        acc = 0.0
        small = 0
        for n in range(100000):
            bracket = log_v - psi_1 - psi_m1 + psi_a + psi_b
            acc += term * bracket
            if abs(term) * (abs(bracket) + 10.0) <= _SERIES_RTOL * max(1e-300, abs(acc)):
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
            term *= (a + m + n) * (b + m + n) * v / ((n + 1.0) * (n + m + 1.0))
            psi_1 += 1.0 / (n + 1.0)
            psi_m1 += 1.0 / (n + m + 1.0)
            psi_a += 1.0 / (a + m + n)
            psi_b += 1.0 / (b + m + n)
        else:
            raise NonConvergence("log-case 2F1 series stalled")
        total -= pref * acc
    return total


def _hyp2f1_pair(a: float, b: float, c: float, w: float, v: float) -> float:
    """2F1 given both w and v = 1-w exactly (callers that know t pass it)."""
    if _is_nonpos_int(c, 1e-9):
        raise ParameterError("2F1 undefined at non-positive integer c = %g" % c)
    if not (0.0 <= w < 1.0):
        raise ParameterError("2F1 argument must satisfy 0 <= w < 1, got %g" % w)
    if w <= 0.5:
        return _series(a, b, c, w)
    # terminating cases are polynomials; evaluate them exactly at any w
    for x in (a, b):
        if x <= 0.0 and x == math.floor(x):
            return _series(a, b, c, w)
    d = c - a - b
    for x in (c - a, c - b):
        if x <= 0.0 and x == math.floor(x):
            return v**d * _series(c - a, c - b, c, w)
    gap = d - round(d)
    if abs(gap) <= 1e-12:
        return _connection_integer(a, b, c, int(round(d)), v)
    if abs(gap) >= 1e-3:
        return _connection(a, b, c, v)
    # joint a,b nudge (preserves b - a) around the removable singularity
    hi = _connection(a + _NUDGE, b + _NUDGE, c, v)
    lo = _connection(a - _NUDGE, b - _NUDGE, c, v)
    return 0.5 * (hi + lo)


def hyp2f1(a: float, b: float, c: float, w: float) -> float:
    """Gauss hypergeometric with real parameters, 0 <= w < 1.

    Direct series up to w = 1/2. Beyond that, terminating cases run as exact
    polynomials (through the Euler transformation when c-a or c-b is the
    nonpositive integer); an integer c-a-b gets the exact log-case
    connection series; anything else uses the two standard 1-w series,
    averaging a pair of parameter-nudged evaluations inside the 1e-3
    near-integer band.
    """
    return _hyp2f1_pair(float(a), float(b), float(c), float(w), 1.0 - float(w))
