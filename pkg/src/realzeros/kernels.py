"""Nonnegativity kernels f_t(y) and g_{t,c}(y), their truncated Taylor
expansions in y, and grid scans of the positivity/convexity/trichotomy
properties.

Pointwise values go through the Gauss-series machinery in numerics; the
Taylor expansions are built by exact truncated polynomial arithmetic (a
product recurrence in the summation index), never by differencing. Finite
differences appear only as the independent confirmation oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import get_backend
from .errors import DomainError, NonConvergence, OrderError, ParameterError
from .numerics import _hyp2f1_pair
from .series import TruncatedSeries

_core = get_backend()

_ORDER_CAP = 60
_KSUM_REL = 1e-20  # contribution bound, relative to the accumulated series
_KSUM_HARD = 10_000


@dataclass(frozen=True)
class KernelPoint:
    """Location (t, c, y) in kernel parameter space; c is 0 for f-scans."""

    t: float
    c: float
    y: float

    def __post_init__(self):
        if not 0.0 < self.t < 1.0:
            raise ParameterError("KernelPoint requires 0 < t < 1")


@dataclass(frozen=True)
class KernelPropertyReport:
    grid: str
    min_value: float
    min_location: KernelPoint
    min_second_difference: float
    min_taylor_coefficient: float
    min_taylor_location: tuple  # (k, t, c)
    odd_coefficient_max_abs: float
    trichotomy_violations: int
    max_abs_coefficient: float = 0.0  # normalizes the coefficient bounds


def _check_t(t: float) -> float:
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DomainError("t must lie in (0, 1)")
    return t


def f_kernel(t: float, y: float) -> float:
    """f_t(y) = y^2 t^y 2F1[y+1, y+1; 2; 1-t]; even in y, vanishes at 0."""
    t = _check_t(t)
    y = float(y)
    if y == 0.0:
        return 0.0
    hyp = _hyp2f1_pair(y + 1.0, y + 1.0, 2.0, 1.0 - t, t)
    return y * y * math.exp(y * math.log(t)) * hyp


def g_kernel(t: float, c: float, y: float) -> float:
    """g_{t,c}(y) = y(y+2c) t^{y+c} 2F1[y+1, y+2c+1; 2; 1-t]
                  + y(y-2c) t^{y-c} 2F1[y+1, y-2c+1; 2; 1-t]
                  - 2 y^2 t^y 2F1[y+1, y+1; 2; 1-t].

    The three terms are assembled symmetrically so negating c swaps the
    first two and reproduces the same float, making evenness in c exact.
    """
    t = _check_t(t)
    c = float(c)
    y = float(y)
    if y == 0.0 or c == 0.0:
        # both limits are identities, not approximations
        return 0.0
    log_t = math.log(t)
    w, v = 1.0 - t, t
    plus = (
        y
        * (y + 2.0 * c)
        * math.exp((y + c) * log_t)
        * _hyp2f1_pair(y + 1.0, y + 2.0 * c + 1.0, 2.0, w, v)
    )
    minus = (
        y
        * (y - 2.0 * c)
        * math.exp((y - c) * log_t)
        * _hyp2f1_pair(y + 1.0, y - 2.0 * c + 1.0, 2.0, w, v)
    )
    base = 2.0 * y * y * math.exp(y * log_t) * _hyp2f1_pair(y + 1.0, y + 1.0, 2.0, w, v)
    return (plus + minus) - base


# Below this t the termwise k-sum needs ~40/t terms; the hypergeometric
# route through f_kernel stays cheap there, so derivatives switch to a
# 5-point y-stencil on it. Stencil error ~h^4 (ln t)^6 / 90 is ~1e-8
# relative at the switch point, where the Bessel weight of every caller
# has already decayed by e^{-12a} or more.
_FD_T_SWITCH = 0.02
_FD_H = 3e-3


def f_derivatives(t: float, y: float):
    """(f, df/dy, d2f/dy2) at (t, y).

    For t >= 0.02 the k-sum A0 = sum_k [(y+1)_k]^2 (1-t)^k / (k! (k+1)!)
    and its first two y-derivatives come from the backend and the product
    rule on y^2 e^{yL} A0 does the rest, with no finite differences. For
    smaller t the k-sum stalls and a central-difference stencil in y on
    the hypergeometric evaluation takes over.
    """
    t = _check_t(t)
    y = float(y)
    if t < _FD_T_SWITCH:
        h = _FD_H
        vm2 = f_kernel(t, y - 2.0 * h)
        vm1 = f_kernel(t, y - h)
        v0 = f_kernel(t, y)
        vp1 = f_kernel(t, y + h)
        vp2 = f_kernel(t, y + 2.0 * h)
        d1 = (vm2 - 8.0 * vm1 + 8.0 * vp1 - vp2) / (12.0 * h)
        d2 = (-vm2 + 16.0 * vm1 - 30.0 * v0 + 16.0 * vp1 - vp2) / (12.0 * h * h)
        return v0, d1, d2
    a0, a1, a2, _used, ok = _core.f_series_sums(t, y, 1e-18, 200_000)
    if not ok:
        raise NonConvergence("kernel series stalled at t=%g, y=%g" % (t, y))
    log_t = math.log(t)
    e = math.exp(y * log_t)
    f = y * y * e * a0
    d1 = e * (2.0 * y * a0 + y * y * (log_t * a0 + a1))
    d2 = e * (
        2.0 * a0
        + 4.0 * y * (a1 + log_t * a0)
        + y * y * (a2 + 2.0 * log_t * a1 + log_t * log_t * a0)
    )
    return f, d1, d2


# ---------------------------------------------------------------------------
# truncated Taylor expansions in y


def _check_order(order: int) -> int:
    if int(order) != order or order < 0:
        raise ParameterError("order must be a nonnegative integer")
    if order > _ORDER_CAP:
        raise OrderError("order %d exceeds the cap %d" % (order, _ORDER_CAP))
    return int(order)


def _exp_series(log_t: float, order: int) -> TruncatedSeries:
    coeffs = [1.0]
    for m in range(1, order + 1):
        coeffs.append(coeffs[-1] * log_t / m)
    return TruncatedSeries(tuple(coeffs))


def _ksum_series(
    t: float,
    shift: float,
    order: int,
    var_scale: float = 1.0,
    rel: float = _KSUM_REL,
) -> TruncatedSeries:
    """sum_k (y+1)_k (y+shift+1)_k (1-t)^k / (k! (k+1)!) as a polynomial in
    y, truncated at `order`. Term k+1 follows from term k by multiplying
    with (y+k+1)(y+shift+k+1)(1-t)/((k+1)(k+2)).

    var_scale s != 1 expands in the variable y' = y/s (coefficients come
    out multiplied by s^k); the confirmation oracle uses it to force a
    different rounding path through the same sum.
    """
    one_minus = 1.0 - t
    s = var_scale
    cur = np.zeros(order + 1)
    cur[0] = 1.0
    acc = np.array(cur)
    norm = 1.0
    for k in range(_KSUM_HARD):
        # multiply cur by (s y' + k + 1)(s y' + shift + k + 1) * one_minus/((k+1)(k+2))
        r1 = k + 1.0
        r2 = shift + k + 1.0
        factor = one_minus / ((k + 1.0) * (k + 2.0))
        nxt = (r1 * r2) * cur
        nxt[1:] += (s * (r1 + r2)) * cur[:-1]
        nxt[2:] += (s * s) * cur[:-2]
        cur = nxt * factor
        acc += cur
        norm = max(norm, float(np.max(np.abs(acc))))
        if float(np.max(np.abs(cur))) < rel * norm:
            return TruncatedSeries(tuple(acc))
    raise NonConvergence("kernel series build did not settle by k=%d" % _KSUM_HARD)


def _f_taylor_impl(t, order, var_scale, rel) -> TruncatedSeries:
    log_t = math.log(t)
    s = _ksum_series(t, 0.0, order, var_scale, rel)
    e = _exp_series(var_scale * log_t, order)
    return (e * s).shift_up(2).scale(var_scale * var_scale)


def f_taylor(t: float, order: int) -> TruncatedSeries:
    """Truncated expansion of f_t in powers of y, by exact polynomial
    arithmetic; coefficients of y^0 and y^1 are exactly zero."""
    t = _check_t(t)
    order = _check_order(order)
    return _f_taylor_impl(t, order, 1.0, _KSUM_REL)


def _g_taylor_impl(t, c, order, var_scale, rel) -> TruncatedSeries:
    log_t = math.log(t)
    s = var_scale
    e = _exp_series(s * log_t, order)
    base = (e * _ksum_series(t, 0.0, order, s, rel)).shift_up(2).scale(2.0 * s * s)
    if c == 0.0:
        return base - base  # identically zero, at the declared order
    ep = e * _ksum_series(t, 2.0 * c, order, s, rel)
    em = e * _ksum_series(t, -2.0 * c, order, s, rel)
    # y(y + 2c) and y(y - 2c) prefactors split into the two shifts
    tp = math.exp(c * log_t)
    tm = math.exp(-c * log_t)
    term_p = ep.shift_up(1).scale(2.0 * c * tp * s) + ep.shift_up(2).scale(tp * s * s)
    term_m = em.shift_up(1).scale(-2.0 * c * tm * s) + em.shift_up(2).scale(tm * s * s)
    return (term_p + term_m) - base


def g_taylor(t: float, c: float, order: int) -> TruncatedSeries:
    """Truncated expansion of g_{t,c} in powers of y.

    All three terms share exp(y log t); the shifts +-c enter through the
    constants t^{+-c} and the shifted second Pochhammer argument. The
    plus/minus terms are combined symmetrically so the result is even in c
    coefficient for coefficient.
    """
    t = _check_t(t)
    c = float(c)
    order = _check_order(order)
    return _g_taylor_impl(t, c, order, 1.0, _KSUM_REL)


# ---------------------------------------------------------------------------
# independent confirmation of a single Taylor coefficient


def _fornberg_weights(x: np.ndarray, m: int) -> np.ndarray:
    """Weights w with sum w_i f(x_i) ~ f^(m)(0) for arbitrary nodes x."""
    n = len(x)
    d = np.zeros((m + 1, n, n))
    d[0, 0, 0] = 1.0
    c1 = 1.0
    for j in range(1, n):
        c2 = 1.0
        for k in range(j):
            c3 = x[j] - x[k]
            c2 *= c3
            for mm in range(min(j, m) + 1):
                prev = d[mm - 1, j - 1, k] if mm > 0 else 0.0
                d[mm, j, k] = (x[j] * d[mm, j - 1, k] - mm * prev) / c3
        for mm in range(min(j, m) + 1):
            prev = d[mm - 1, j - 1, j - 1] if mm > 0 else 0.0
            d[mm, j, j] = c1 / c2 * (mm * prev - x[j - 1] * d[mm, j - 1, j - 1])
        c1 = c2
    return d[m, n - 1, :]


def taylor_coefficient_fd(which: str, t: float, c: float, k: int, h: float = 0.15):
    """k-th Taylor coefficient at y = 0 from central finite differences.

    Resolves low orders only (roughly k <= 8); beyond that round-off in the
    difference stencil swamps the derivative.
    """
    if which not in ("f", "g"):
        raise ParameterError("which must be 'f' or 'g'")
    if k < 0:
        raise ParameterError("coefficient index must be >= 0")
    npts = k + 9 if (k + 9) % 2 == 1 else k + 10
    half = npts // 2
    nodes = h * np.arange(-half, half + 1, dtype=float)
    w = _fornberg_weights(nodes, k)
    if which == "f":
        vals = [f_kernel(t, y) if y != 0.0 else 0.0 for y in nodes]
    else:
        vals = [g_kernel(t, c, y) if y != 0.0 else 0.0 for y in nodes]
    deriv = math.fsum(wi * vi for wi, vi in zip(w, vals))
    return deriv / math.factorial(k)


def confirm_coefficient(which: str, t: float, c: float, k: int, value: float):
    """Second opinion on one reported Taylor coefficient.

    Low orders are recomputed by finite differences. Higher ones rebuild
    the series in the stretched variable y/2 with a tighter truncation
    rule, which routes every intermediate through different floats, then
    rescale coefficient k by 2^-k. Returns (confirmed, oracle_value).
    """
    if which not in ("f", "g"):
        raise ParameterError("which must be 'f' or 'g'")
    t = _check_t(t)
    if k <= 8:
        oracle = taylor_coefficient_fd(which, t, c, k)
        tol = 1e-6 * max(1.0, abs(value), abs(oracle))
    else:
        stretch = 2.0
        if which == "f":
            series = _f_taylor_impl(t, k, stretch, 1e-26)
        else:
            series = _g_taylor_impl(t, float(c), k, stretch, 1e-26)
        oracle = series.coeffs[k] / stretch**k
        tol = 1e-9 * max(1.0, abs(value), abs(oracle))
    return abs(value - oracle) <= tol, oracle


# ---------------------------------------------------------------------------
# property scans


def _kernel_at(which: str, t: float, c: float, y: float) -> float:
    if which == "f":
        return f_kernel(t, y)
    return g_kernel(t, c, y)


def scan_kernel_properties(
    t_values,
    c_values,
    y_values,
    which: str = "f",
    taylor_order: int = 30,
    h: float = 1e-3,
) -> KernelPropertyReport:
    """Grid scan of one kernel: pointwise minimum, minimum Richardson-
    extrapolated second difference, Taylor-coefficient minima, odd-
    coefficient residue, and (for f) trichotomy violations at y > 0.

    The second difference uses steps h and 2h with one extrapolation level:
    (4 D_h - D_{2h}) / 3.
    """
    if which not in ("f", "g"):
        raise ParameterError("which must be 'f' or 'g'")
    t_values = [_check_t(t) for t in t_values]
    c_values = [float(c) for c in c_values]
    y_values = [float(y) for y in y_values]
    if not t_values or not y_values or (which == "g" and not c_values):
        raise ParameterError("scan grid must be nonempty")
    c_iter = c_values if which == "g" else [0.0]

    min_value = math.inf
    min_loc = None
    min_d2 = math.inf
    tri_violations = 0
    for t in t_values:
        for c in c_iter:
            cache = {}

            def val(y, t=t, c=c, cache=cache):
                if y not in cache:
                    cache[y] = _kernel_at(which, t, c, y)
                return cache[y]

            for y in y_values:
                v = val(y)
                if v < min_value:
                    min_value = v
                    min_loc = KernelPoint(t, c, y)
                d_h = (val(y - h) - 2.0 * v + val(y + h)) / (h * h)
                d_2h = (val(y - 2 * h) - 2.0 * v + val(y + 2 * h)) / (4.0 * h * h)
                d2 = (4.0 * d_h - d_2h) / 3.0
                if d2 < min_d2:
                    min_d2 = d2
    if which == "f":
        for t in t_values:
            for c in c_values:
                if c <= 0.0:
                    continue
                for y in y_values:
                    if y <= 0.0:
                        continue
                    if f_kernel(t, y + c) - f_kernel(t, y - c) <= 0.0:
                        tri_violations += 1

    min_coeff = math.inf
    min_coeff_loc = (0, t_values[0], c_iter[0])
    odd_max = 0.0
    coeff_scale = 0.0
    for t in t_values:
        for c in c_iter:
            series = (
                f_taylor(t, taylor_order)
                if which == "f"
                else g_taylor(t, c, taylor_order)
            )
            coeffs = series.coeffs
            for k in range(0, taylor_order + 1, 2):
                if coeffs[k] < min_coeff:
                    min_coeff = coeffs[k]
                    min_coeff_loc = (k, t, c)
                coeff_scale = max(coeff_scale, abs(coeffs[k]))
            for k in range(1, taylor_order + 1, 2):
                odd_max = max(odd_max, abs(coeffs[k]))

    grid = "%s-scan: t=%s c=%s y=[%g..%g]x%d order=%d" % (
        which,
        ["%g" % t for t in t_values],
        ["%g" % c for c in c_iter],
        y_values[0],
        y_values[-1],
        len(y_values),
        taylor_order,
    )
    return KernelPropertyReport(
        grid=grid,
        min_value=min_value,
        min_location=min_loc,
        min_second_difference=min_d2,
        min_taylor_coefficient=min_coeff,
        min_taylor_location=min_coeff_loc,
        odd_coefficient_max_abs=odd_max,
        trichotomy_violations=tri_violations,
        max_abs_coefficient=coeff_scale,
    )
