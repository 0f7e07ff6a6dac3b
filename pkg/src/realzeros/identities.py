"""Dual-route verification of the square-modulus identities.

Each verifier evaluates its two sides by genuinely independent routes --
direct complex-order quadrature on one side; unit-interval integrals over
the hypergeometric kernels, four-product Bessel sums, or a truncated
Mellin-Barnes contour on the other -- and reports both values together
with absolute and relative residuals. Collapsing the routes would make
the checks vacuous, so nothing here reuses the decomposition being
tested to build its own reference value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ContourError,
    IntegrandNegative,
    NonConvergence,
    ParameterError,
)
from .functions import eval_F, eval_K_iz, eval_K_nu, eval_xi_star
from .kernels import f_derivatives, f_kernel, g_kernel
from .numerics import (
    DEFAULT_SPEC,
    QuadratureSpec,
    _loggamma_array,
    hyp2f1,
    integrate_unit_interval,
)

__all__ = [
    "IdentityReport",
    "MellinBarnesSpec",
    "verify_K_square_decomposition",
    "eval_L",
    "verify_mellin_barnes",
    "verify_F_square_expansion",
    "verify_F_square_decomposition",
    "verify_derivative_identities",
    "verify_xistar_k_sum",
]

_FLOOR = 1e-300
# exp(-arg) underflows past 745, so K at larger arguments is an exact 0.0
# in binary64 and the kernel factor need not be evaluated at all.
_K_ARG_CUTOFF = 745.0
_NEG_TOL = 1e-14


@dataclass(frozen=True)
class IdentityReport:
    """Two independently computed sides of one identity plus the verdict.

    ``rel_residual`` is ``abs_residual / max(|lhs|, |rhs|, 1e-300)``.
    ``passed`` applies the relative bound when either side is of order one
    or larger and degrades to a plain absolute bound for near-zero sides:
    ``abs_residual <= tolerance_used * max(|lhs|, |rhs|, 1)``.  (The field
    is ``passed`` only because ``pass`` is a keyword; CSV output keeps the
    short column name.)
    """

    identity_name: str
    inputs: dict
    lhs: float
    rhs: float
    abs_residual: float
    rel_residual: float
    tolerance_used: float
    passed: bool


@dataclass(frozen=True)
class MellinBarnesSpec:
    """Vertical-line contour: abscissa, truncation height, and step.

    The abscissa must satisfy c_line < -|y| for the target point; that is
    checked against y at verification time, not here.
    """

    c_line: float
    height: float = 60.0
    step: float = 0.05

    def __post_init__(self):
        if not (math.isfinite(self.c_line) and math.isfinite(self.height)):
            raise ParameterError("contour parameters must be finite")
        if not (self.height > 0.0 and self.step > 0.0):
            raise ParameterError("contour height and step must be positive")


def _mk_report(name, inputs, lhs, rhs, tol, extra_ok=True):
    lhs = float(lhs)
    rhs = float(rhs)
    ab = abs(lhs - rhs)
    rel = ab / max(abs(lhs), abs(rhs), _FLOOR)
    ok = ab <= tol * max(abs(lhs), abs(rhs), 1.0)
    return IdentityReport(
        identity_name=name,
        inputs=dict(inputs),
        lhs=lhs,
        rhs=rhs,
        abs_residual=ab,
        rel_residual=rel,
        tolerance_used=float(tol),
        passed=bool(ok and extra_ok),
    )


def _require_scale(a: float) -> float:
    a = float(a)
    if not (math.isfinite(a) and a > 0.0):
        raise ParameterError("transform scale a must be positive, got %r" % (a,))
    return a


def _kp_integrand(a, x, y, spec, monitor):
    """t^(y-1) 2F1(y+1,y+1;2;1-t) [K_ix(a/sqrt(t))]^2 with underflow guard.

    monitor accumulates [most negative sample, largest |sample|] so the
    caller can assert the proven nonnegativity of the integrand.
    """

    def integrand(t):
        arg = a / math.sqrt(t)
        if arg > _K_ARG_CUTOFF:
            return 0.0
        k = float(eval_K_nu(complex(0.0, x), arg, spec))
        k2 = k * k
        if k2 == 0.0:
            return 0.0
        val = t ** (y - 1.0) * hyp2f1(y + 1.0, y + 1.0, 2.0, 1.0 - t) * k2
        if val < monitor[0]:
            monitor[0] = val
        av = abs(val)
        if av > monitor[1]:
            monitor[1] = av
        return val

    return integrand


def _check_nonnegative(monitor, what):
    if monitor[0] < -_NEG_TOL * max(monitor[1], _FLOOR):
        raise IntegrandNegative(
            "%s sampled %.3e against scale %.3e" % (what, monitor[0], monitor[1])
        )


def verify_K_square_decomposition(
    a: float,
    x: float,
    y: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    tol: float = 1e-8,
) -> IdentityReport:
    """|K_{i(x+iy)}(a)|^2 against [K_ix(a)]^2 plus the kernel integral."""
    a = _require_scale(a)
    x = float(x)
    y = float(y)
    kv = complex(eval_K_iz(complex(x, y), a, spec))
    lhs = kv.real * kv.real + kv.imag * kv.imag
    kx = float(eval_K_nu(complex(0.0, x), a, spec))
    if y == 0.0:
        integral = 0.0
    else:
        monitor = [math.inf, 0.0]
        integral, _ = integrate_unit_interval(
            _kp_integrand(a, x, y, spec, monitor), spec
        )
        _check_nonnegative(monitor, "K-square decomposition integrand")
    rhs = kx * kx + y * y * integral
    return _mk_report("kp", {"a": a, "x": x, "y": y}, lhs, rhs, tol)


def eval_L(
    a: float, x: float, y: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """The kernel integral itself (no y^2 factor); strictly positive.

    Stays finite as y -> 0 because the squared Bessel factor decays
    double-exponentially at the t -> 0 end where t^(y-1) loses
    integrability on its own.
    """
    a = _require_scale(a)
    monitor = [math.inf, 0.0]
    val, _ = integrate_unit_interval(
        _kp_integrand(a, float(x), float(y), spec, monitor), spec
    )
    _check_nonnegative(monitor, "L integrand")
    return val


def verify_mellin_barnes(
    a: float,
    x: float,
    y: float,
    mb: MellinBarnesSpec,
    spec: QuadratureSpec = DEFAULT_SPEC,
    tol: float = 1e-6,
) -> IdentityReport:
    """|K_{iz}(a)|^2 against the truncated vertical-line contour integral."""
    a = _require_scale(a)
    x = float(x)
    y = float(y)
    if not (mb.c_line < -abs(y)):
        raise ContourError(
            "contour abscissa %g must lie strictly left of -|y| = %g"
            % (mb.c_line, -abs(y))
        )
    kv = complex(eval_K_iz(complex(x, y), a, spec))
    lhs = kv.real * kv.real + kv.imag * kv.imag

    n = int(math.floor(mb.height / mb.step + 0.5))
    tau = np.arange(-n, n + 1, dtype=float) * mb.step
    s = mb.c_line + 1j * tau
    log_vals = (
        _loggamma_array(1j * x - s)
        + _loggamma_array(-1j * x - s)
        + _loggamma_array(y - s)
        + _loggamma_array(-y - s)
        - _loggamma_array(-s)
        - _loggamma_array(0.5 - s)
        + 2.0 * math.log(a) * s
    )
    vals = np.exp(log_vals)
    mags = np.abs(vals)
    peak = float(mags.max())
    tail = float(max(mags[0], mags[-1]))
    if tail > 1e-10 * max(peak, _FLOOR):
        raise NonConvergence(
            "gamma product still %.3e of peak at height %g; raise the "
            "truncation height" % (tail / max(peak, _FLOOR), mb.height)
        )
    weights = np.ones_like(tau)
    weights[0] = weights[-1] = 0.5
    # ds = i dtau cancels the i in the sqrt(pi)/(4 pi i) prefactor
    rhs = (
        math.sqrt(math.pi)
        / (4.0 * math.pi)
        * mb.step
        * float(np.sum(vals.real * weights))
    )
    return _mk_report(
        "mellin", {"a": a, "x": x, "y": y, "c_line": mb.c_line}, lhs, rhs, tol
    )


def verify_F_square_expansion(
    a: float,
    c: float,
    x: float,
    y: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    tol: float = 1e-8,
) -> IdentityReport:
    """|F_{a,c}(x+iy)|^2 against the four-product Bessel expansion."""
    a = _require_scale(a)
    c = float(c)
    x = float(x)
    y = float(y)
    fv = complex(eval_F(a, c, complex(x, y), spec))
    lhs = fv.real * fv.real + fv.imag * fv.imag
    k_mm = complex(eval_K_nu(complex(-y - c, x), a, spec))
    k_mp = complex(eval_K_nu(complex(-y + c, x), a, spec))
    k_pm = complex(eval_K_nu(complex(y - c, x), a, spec))
    k_pp = complex(eval_K_nu(complex(y + c, x), a, spec))
    rhs = (k_mm * k_pm + k_mm * k_pp + k_mp * k_pm + k_mp * k_pp).real
    return _mk_report("f2", {"a": a, "c": c, "x": x, "y": y}, lhs, rhs, tol)


def verify_F_square_decomposition(
    a: float,
    c: float,
    x: float,
    y: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    tol: float = 1e-6,
) -> IdentityReport:
    """|F_{a,c}(x+iy)|^2 against real-axis value plus f- and g-kernel terms.

    The squared Bessel factor in the g-term is computed by direct
    complex-order quadrature rather than by recursing into the K-square
    decomposition, keeping the two sides of this identity independent.
    """
    a = _require_scale(a)
    c = float(c)
    x = float(x)
    y = float(y)
    fv = complex(eval_F(a, c, complex(x, y), spec))
    lhs = fv.real * fv.real + fv.imag * fv.imag
    fx = float(eval_F(a, c, x, spec))

    def f_term(t):
        arg = a / math.sqrt(t)
        if arg > _K_ARG_CUTOFF:
            return 0.0
        fs = float(eval_F(arg, c, x, spec))
        f2 = fs * fs
        if f2 == 0.0:
            return 0.0
        return f_kernel(t, y) * f2 / t

    def g_term(t):
        arg = a / math.sqrt(t)
        if arg > _K_ARG_CUTOFF:
            return 0.0
        kv = complex(eval_K_nu(complex(-c, x), arg, spec))
        k2 = kv.real * kv.real + kv.imag * kv.imag
        if k2 == 0.0:
            return 0.0
        return g_kernel(t, c, y) * k2 / t

    # both kernels vanish identically at y = 0, and the g-kernel at c = 0
    i_f = 0.0 if y == 0.0 else integrate_unit_interval(f_term, spec)[0]
    i_g = (
        0.0
        if (y == 0.0 or c == 0.0)
        else integrate_unit_interval(g_term, spec)[0]
    )
    rhs = fx * fx + i_f + i_g
    return _mk_report("f3", {"a": a, "c": c, "x": x, "y": y}, lhs, rhs, tol)


def verify_derivative_identities(
    a: float,
    x: float,
    y: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    tol: float = 1e-6,
    sign_tol: float = 1e-8,
):
    """First and second y-derivative identities for |K_{iz}(a)|^2.

    Left sides come from central differences of the squared modulus (one
    Richardson level on the first derivative); right sides integrate the
    termwise-differentiated kernel series against [K_ix(a/sqrt(t))]^2.
    Each report's verdict also requires the proven sign condition:
    y d/dy |K|^2 >= -sign_tol*scale for y > 0, and likewise for the pure
    second derivative at every y.  Returns a (first, second) report pair.
    """
    a = _require_scale(a)
    x = float(x)
    y = float(y)

    cache = {}

    def m2(yy):
        v = cache.get(yy)
        if v is None:
            kv = complex(eval_K_iz(complex(x, yy), a, spec))
            v = kv.real * kv.real + kv.imag * kv.imag
            cache[yy] = v
        return v

    def d1(step):
        return (
            m2(y - 2.0 * step)
            - 8.0 * m2(y - step)
            + 8.0 * m2(y + step)
            - m2(y + 2.0 * step)
        ) / (12.0 * step)

    h = 1e-3
    lhs1 = y * (16.0 * d1(h) - d1(2.0 * h)) / 15.0
    h2 = 3e-3
    lhs2 = (
        -m2(y - 2.0 * h2)
        + 16.0 * m2(y - h2)
        - 30.0 * m2(y)
        + 16.0 * m2(y + h2)
        - m2(y + 2.0 * h2)
    ) / (12.0 * h2 * h2)

    def k2_at(t):
        arg = a / math.sqrt(t)
        if arg > _K_ARG_CUTOFF:
            return 0.0
        k = float(eval_K_nu(complex(0.0, x), arg, spec))
        return k * k

    def first_integrand(t):
        k2 = k2_at(t)
        if k2 == 0.0:
            return 0.0
        return y * f_derivatives(t, y)[1] * k2 / t

    def second_integrand(t):
        k2 = k2_at(t)
        if k2 == 0.0:
            return 0.0
        return f_derivatives(t, y)[2] * k2 / t

    rhs1 = 0.0 if y == 0.0 else integrate_unit_interval(first_integrand, spec)[0]
    rhs2 = integrate_unit_interval(second_integrand, spec)[0]

    scale1 = max(abs(lhs1), abs(rhs1), m2(y))
    scale2 = max(abs(lhs2), abs(rhs2), m2(y))
    sign_ok1 = (y <= 0.0) or (lhs1 >= -sign_tol * scale1)
    sign_ok2 = lhs2 >= -sign_tol * scale2

    inputs = {"a": a, "x": x, "y": y}
    first = _mk_report("d1", inputs, lhs1, rhs1, tol, extra_ok=sign_ok1)
    second = _mk_report("d2", inputs, lhs2, rhs2, tol, extra_ok=sign_ok2)
    return first, second


def verify_xistar_k_sum(
    z,
    spec: QuadratureSpec = DEFAULT_SPEC,
    tol: float = 1e-9,
) -> IdentityReport:
    """Even transform of the weighted cosh window against its Bessel pair.

    Compares the direct cosine-transform evaluation at z (complex allowed)
    with 4 pi^2 [K_{iz/2 - 9/4}(2 pi) + K_{iz/2 + 9/4}(2 pi)].  The report
    stores the magnitudes of the two (possibly complex) sides; residuals
    are moduli of the complex difference, judged against
    max(1, |lhs|, |rhs|).
    """
    z = complex(z)
    lhs = complex(eval_xi_star(z, spec))
    two_pi = 2.0 * math.pi
    k_minus = complex(eval_K_nu(0.5j * z - 2.25, two_pi, spec))
    k_plus = complex(eval_K_nu(0.5j * z + 2.25, two_pi, spec))
    rhs = 4.0 * math.pi**2 * (k_minus + k_plus)
    ab = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs), _FLOOR)
    rel = ab / scale
    ok = ab <= tol * max(abs(lhs), abs(rhs), 1.0)
    return IdentityReport(
        identity_name="xistar",
        inputs={"x": z.real, "y": z.imag},
        lhs=abs(lhs),
        rhs=abs(rhs),
        abs_residual=ab,
        rel_residual=rel,
        tolerance_used=float(tol),
        passed=bool(ok),
    )
