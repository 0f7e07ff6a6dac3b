"""Entire-function evaluators built on semi-infinite cosine/cosh transforms.

Every function here is a transform of the shape

    integral over [0, inf) of  bracket(u) * exp(-d*cosh(m*u)) * cos(z*u) du

or, for the modified Bessel value K_nu(a), of exp(-a*cosh u)*cosh(nu*u).
The integrands are even in u and decay double-exponentially, so the
trapezoid comb with successive halving converges spectrally; node sums are
delegated to the active backend.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from ._backend import get_backend
from .errors import DomainError, NonConvergence, OrderError, ParameterError
from .numerics import DEFAULT_SPEC, ComplexValue, QuadratureSpec, _maybe_real, _refine_comb

_core = get_backend()

_LOG_GUARD = -691.0  # log(1e-300), truncation threshold for integrand bounds
_EXP_WINDOW = 700.0  # largest log-magnitude any comb node may reach
_TINY = 1e-300

_TAGS = ("K_order", "F", "XiStar", "XiStarStar", "XiGeneral", "RiemannXi")
_ARITY = {
    "K_order": 1,
    "F": 2,
    "XiStar": 0,
    "XiStarStar": 0,
    "XiGeneral": 5,
    "RiemannXi": 0,
}


@dataclass(frozen=True)
class FunctionId:
    """Tagged selector for one entire function family.

    tag/params pairs:
      K_order(a)              z -> K_{iz}(a), a > 0
      F(a, c)                 z -> F_{a,c}(z), a > 0
      XiStar                  z -> Xi*(z)
      XiStarStar              z -> Xi**(z)
      XiGeneral(A, B, a, b, c)  requires A > B > 0, a > b > 0, c > 0
      RiemannXi               z -> Xi(z)
    """

    tag: str
    params: tuple = ()

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ParameterError("unknown function tag %r" % (self.tag,))
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if len(params) != _ARITY[self.tag]:
            raise ParameterError(
                "%s takes %d parameter(s), got %d"
                % (self.tag, _ARITY[self.tag], len(params))
            )
        if not all(math.isfinite(p) for p in params):
            raise ParameterError("non-finite parameter in %r" % (self,))
        if self.tag in ("K_order", "F") and params[0] <= 0.0:
            raise ParameterError("%s requires a > 0" % self.tag)
        if self.tag == "XiGeneral":
            big_a, big_b, sa, sb, sc = params
            if not (big_a > big_b > 0.0):
                raise ParameterError("XiGeneral requires A > B > 0")
            if not (sa > sb > 0.0):
                raise ParameterError("XiGeneral requires a > b > 0")
            if not sc > 0.0:
                raise ParameterError("XiGeneral requires c > 0")

    @classmethod
    def k_order(cls, a: float) -> "FunctionId":
        return cls("K_order", (a,))

    @classmethod
    def f(cls, a: float, c: float) -> "FunctionId":
        return cls("F", (a, c))

    @classmethod
    def xi_star(cls) -> "FunctionId":
        return cls("XiStar")

    @classmethod
    def xi_star_star(cls) -> "FunctionId":
        return cls("XiStarStar")

    @classmethod
    def xi_general(cls, big_a, big_b, a, b, c) -> "FunctionId":
        return cls("XiGeneral", (big_a, big_b, a, b, c))

    @classmethod
    def riemann_xi(cls) -> "FunctionId":
        return cls("RiemannXi")

    def describe(self) -> str:
        if not self.params:
            return self.tag
        return "%s(%s)" % (self.tag, ", ".join("%g" % p for p in self.params))


@dataclass(frozen=True)
class PhiTruncation:
    """Explicit cap on the n-sum inside the theta-derivative weight."""

    n_max: int

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ParameterError("n_max must be an integer >= 1")
        object.__setattr__(self, "n_max", int(self.n_max))


def phi(u: float, trunc: PhiTruncation | None = None) -> float:
    """Weight function Phi(u) = sum_n (4n^4 pi^2 e^{4.5u} - 6n^2 pi e^{2.5u})
    e^{-n^2 pi e^{2u}}, summed with exactly-rounded accumulation.

    The n-terms cancel heavily for u < 0 (the sum is even only through a
    theta-function identity), so a plain running sum loses that symmetry;
    fsum keeps it to the last bit. Defined for |u| <= 6. When trunc is
    None the sum stops once terms fall under 1e-300.
    """
    u = float(u)
    e45 = math.exp(4.5 * u)
    e25 = math.exp(2.5 * u)
    ex2 = math.exp(2.0 * u)
    terms = []
    n = 0
    cap = trunc.n_max if trunc is not None else 1_000_000
    while n < cap:
        n += 1
        n2 = float(n * n)
        decay = math.exp(-n2 * math.pi * ex2)
        term = (4.0 * n2 * n2 * math.pi**2 * e45 - 6.0 * n2 * math.pi * e25) * decay
        terms.append(term)
        if trunc is None and n >= 2 and abs(term) < _TINY:
            break
    return math.fsum(terms)


def phi_asymptote_ratio(u: float, trunc: PhiTruncation | None = None) -> float:
    """Phi(u) relative to its leading large-u term 4 pi^2 e^{4.5u - pi e^{2u}}.

    The quotient is formed with the shared exponential cancelled inside
    each n-term, so it stays representable long after Phi itself (and the
    asymptote) underflow to zero, which happens near u = 2.7 in doubles.
    """
    u = float(u)
    if not 0.0 <= u <= 6.0:
        raise DomainError("asymptote comparison needs 0 <= u <= 6, got %g" % u)
    decay = math.pi * math.exp(2.0 * u)
    tilt = 1.5 / math.pi * math.exp(-2.0 * u)
    terms = []
    n = 0
    cap = trunc.n_max if trunc is not None else 1_000_000
    while n < cap:
        n += 1
        n2 = float(n * n)
        term = (n2 * n2 - n2 * tilt) * math.exp(-(n2 - 1.0) * decay)
        terms.append(term)
        if trunc is None and n >= 2 and abs(term) < _TINY:
            break
    return math.fsum(terms)


def _adaptive_phi_nmax(u_min: float) -> int:
    """Terms needed so the first omitted one is below 1e-300 at every node
    u >= u_min (decay is weakest at the smallest u)."""
    ex2 = math.exp(2.0 * max(0.0, u_min))
    n = 1
    while n < 1000:
        n2 = float((n + 1) * (n + 1))
        log_term = math.log(4.0 * n2 * n2 * math.pi**2) + 27.0 - n2 * math.pi * ex2
        if log_term < _LOG_GUARD:
            return n
        n += 1
    return n


# ---------------------------------------------------------------------------
# K_nu(a) by quadrature of exp(-a cosh u) cosh(nu u)


@functools.lru_cache(maxsize=4096)
def _k_quad(p: float, q: float, a: float, spec: QuadratureSpec):
    """Canonicalized worker behind eval_K_nu: p = Re nu >= 0, q = Im nu >= 0."""
    u_cut = None
    for u in range(1, 501):
        if -a * math.cosh(float(u)) + p * float(u) < _LOG_GUARD:
            u_cut = float(u)
            break
    if u_cut is None:
        raise NonConvergence("integrand bound never falls under the guard")

    def eval_comb(start, step, n):
        re, im, ab = _core.kbessel_sum(a, p, q, start, step, n)
        return complex(re, im), ab

    f_lo, _ = eval_comb(0.0, 1.0, 1)
    f_hi, _ = eval_comb(u_cut, 1.0, 1)
    return _refine_comb(eval_comb, 0.0, u_cut, f_lo, f_hi, spec)


def eval_K_nu(nu: ComplexValue, a: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """K_nu(a) = integral over [0, inf) of exp(-a cosh u) cosh(nu u) du.

    The integrand is even in nu and conjugates with it, so the order is
    canonicalized to Re nu >= 0, Im nu >= 0 before quadrature; this makes
    K_{-nu} = K_nu bit-exact and shares cached evaluations four ways.
    """
    a = float(a)
    if not a > 0.0:
        raise ParameterError("K_nu requires a > 0")
    nu = complex(nu)
    if abs(nu.real) > 50.0:
        raise OrderError("|Re nu| > 50 exceeds the evaluation window")
    p, q = nu.real, nu.imag
    if p < 0.0 or (p == 0.0 and q < 0.0):
        p, q = -p, -q
    conj = q < 0.0
    if conj:
        q = -q
    val, _err = _k_quad(p, q, a, spec)
    if conj:
        val = val.conjugate()
    return _maybe_real(val)


def eval_K_iz(z: ComplexValue, a: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """K at purely 'rotated' order: K_{iz}(a), real for real z."""
    return eval_K_nu(1j * complex(z), a, spec)


# ---------------------------------------------------------------------------
# cosine transforms of [A cosh(pu) - B cosh(qu)] exp(-d cosh(mu))


def _coshw_quad(A, B, p, q, m, d, z, spec: QuadratureSpec):
    z = complex(z)
    growth = max(abs(p), abs(q)) + abs(z.imag)
    # peak of the log-bound over u >= 0; beyond the float window the comb
    # sums would overflow before cancellation can help
    if growth > 0.0:
        u_peak = math.asinh(growth / (d * m)) / m
        peak = math.log(abs(A) + abs(B) + _TINY) + growth * u_peak - d * math.cosh(m * u_peak)
        if peak > _EXP_WINDOW:
            raise OrderError("parameters push the integrand past the float window")
    u_cut = None
    log_pref = math.log(abs(A) + abs(B) + _TINY)
    for u in range(1, 501):
        if log_pref + growth * float(u) - d * math.cosh(m * float(u)) < _LOG_GUARD:
            u_cut = float(u)
            break
    if u_cut is None:
        raise NonConvergence("integrand bound never falls under the guard")

    def eval_comb(start, step, n):
        re, im, ab = _core.coshw_sum(A, B, p, q, m, d, z.real, z.imag, start, step, n)
        return complex(re, im), ab

    f_lo, _ = eval_comb(0.0, 1.0, 1)
    f_hi, _ = eval_comb(u_cut, 1.0, 1)
    val, err = _refine_comb(eval_comb, 0.0, u_cut, f_lo, f_hi, spec)
    return _maybe_real(val), err


def eval_F(a: float, c: float, z: ComplexValue, spec: QuadratureSpec = DEFAULT_SPEC):
    """F_{a,c}(z) = 2 * integral of cosh(cu) exp(-a cosh u) cos(zu) du.

    Evaluated through this single transform; the two-term K_{i(z-ic)} +
    K_{i(z+ic)} form is computed elsewhere and compared against it, so the
    two routes stay independent.
    """
    a = float(a)
    if not a > 0.0:
        raise ParameterError("F requires a > 0")
    val, _err = _coshw_quad(2.0, 0.0, float(c), 0.0, 1.0, a, z, spec)
    return val


_PI = math.pi


def eval_xi_star(z: ComplexValue, spec: QuadratureSpec = DEFAULT_SPEC):
    """16 pi^2 * integral of cosh(4.5u) exp(-2 pi cosh 2u) cos(zu) du."""
    val, _err = _coshw_quad(16.0 * _PI**2, 0.0, 4.5, 0.0, 2.0, 2.0 * _PI, z, spec)
    return val


def eval_xi_star_star(z: ComplexValue, spec: QuadratureSpec = DEFAULT_SPEC):
    """8 pi * integral of [2 pi cosh(4.5u) - 3 cosh(2.5u)] exp(-2 pi cosh 2u)
    cos(zu) du; prefactors folded into the bracket."""
    val, _err = _coshw_quad(
        16.0 * _PI**2, 24.0 * _PI, 4.5, 2.5, 2.0, 2.0 * _PI, z, spec
    )
    return val


def eval_xi_general(A, B, a, b, c, z: ComplexValue, spec: QuadratureSpec = DEFAULT_SPEC):
    """integral of [A cosh(au) - B cosh(bu)] exp(-c cosh u) cos(zu) du,
    under the ordering A > B > 0, a > b > 0, c > 0."""
    fid = FunctionId.xi_general(A, B, a, b, c)  # reuse the constraint checks
    big_a, big_b, sa, sb, sc = fid.params
    val, _err = _coshw_quad(big_a, big_b, sa, sb, 1.0, sc, z, spec)
    return val


def eval_riemann_xi(
    z: ComplexValue,
    trunc: PhiTruncation | None = None,
    spec: QuadratureSpec = DEFAULT_SPEC,
):
    """Xi(z) = 2 * integral of Phi(u) cos(zu) du for |Im z| <= 8."""
    z = complex(z)
    if abs(z.imag) > 8.0:
        raise DomainError("|Im z| > 8 outside the growth guard")
    nmax = trunc.n_max if trunc is not None else _adaptive_phi_nmax(0.0)

    def eval_comb(start, step, n):
        re, im, ab = _core.phi_sum(z.real, z.imag, start, step, n, nmax)
        return complex(re, im), ab

    u_cut = None
    for u in range(1, 61):
        _, _, ab = _core.phi_sum(z.real, z.imag, float(u), 1.0, 1, nmax)
        if ab < DEFAULT_SPEC.truncation_guard:
            u_cut = float(u)
            break
    if u_cut is None:
        raise NonConvergence("no truncation point for the Phi transform")
    f_lo, _ = eval_comb(0.0, 1.0, 1)
    f_hi, _ = eval_comb(u_cut, 1.0, 1)
    val, _err = _refine_comb(eval_comb, 0.0, u_cut, f_lo, f_hi, spec)
    return _maybe_real(2.0 * val)


def evaluate(fid: FunctionId, z: ComplexValue, spec: QuadratureSpec = DEFAULT_SPEC):
    """Evaluate the function selected by fid at z."""
    if fid.tag == "K_order":
        return eval_K_iz(z, fid.params[0], spec)
    if fid.tag == "F":
        return eval_F(fid.params[0], fid.params[1], z, spec)
    if fid.tag == "XiStar":
        return eval_xi_star(z, spec)
    if fid.tag == "XiStarStar":
        return eval_xi_star_star(z, spec)
    if fid.tag == "XiGeneral":
        return eval_xi_general(*fid.params, z, spec)
    return eval_riemann_xi(z, spec=spec)
