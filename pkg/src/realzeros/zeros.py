"""Real-zero location, winding counts, and reality certificates.

A certificate pairs two independent counts over a rectangle symmetric
about the real axis: the argument-principle winding number around the
boundary and the number of sign-change zeros found on the real segment.
Equality (with a clean boundary) certifies that every zero inside the
rectangle is real. A small built-in control function with a conjugate
pair of non-real zeros exercises the failure path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    BoundaryZeroError,
    EvaluationError,
    ParameterError,
    PhaseResolutionError,
)
from .functions import FunctionId, evaluate
from .numerics import DEFAULT_SPEC, QuadratureSpec

__all__ = [
    "CONTROL_Z2P1",
    "Rectangle",
    "ZeroList",
    "RectCertificate",
    "JensenReport",
    "scan_real_zeros",
    "count_zeros_rectangle",
    "certify_reality",
    "jensen_scan",
]

# name accepted anywhere a FunctionId is: z^2 + 1, whose zeros +-i are not
# real, so certificates and Jensen scans must flag it
CONTROL_Z2P1 = "control-z2p1"

_MAX_BOUNDARY_POINTS = 1 << 20
_BISECT_REL = 1e-12
_TOUCH_REL = 1e-9


@dataclass(frozen=True)
class Rectangle:
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self):
        vals = (self.x_lo, self.x_hi, self.y_lo, self.y_hi)
        if not all(math.isfinite(v) for v in vals):
            raise ParameterError("rectangle corners must be finite")
        if not (self.x_lo < self.x_hi and self.y_lo < self.y_hi):
            raise ParameterError(
                "rectangle must satisfy x_lo < x_hi and y_lo < y_hi"
            )

    def corners(self):
        return (
            complex(self.x_lo, self.y_lo),
            complex(self.x_hi, self.y_lo),
            complex(self.x_hi, self.y_hi),
            complex(self.x_lo, self.y_hi),
        )


@dataclass(frozen=True)
class ZeroList:
    """Refined real zeros as (location, bracket_width), plus suspects.

    suspect_touches holds grid abscissas where |f| dips below 1e-9 of the
    scan's largest sample without a sign change -- the signature of an
    even-order zero that bisection cannot bracket. Reported, not counted.
    """

    zeros: tuple
    suspect_touches: tuple = ()

    def __post_init__(self):
        locs = [z[0] for z in self.zeros]
        if any(b > a for a, b in zip(locs[1:], locs)):
            raise ParameterError("zero locations must be increasing")

    def __len__(self):
        return len(self.zeros)

    def locations(self):
        return tuple(z[0] for z in self.zeros)


@dataclass(frozen=True)
class RectCertificate:
    rect: Rectangle
    winding_count: int
    real_zeros_found: int
    certified: bool
    boundary_min_modulus: float


@dataclass(frozen=True)
class JensenReport:
    """Grid minima of the two Jensen quantities for |F(x+iy)|^2."""

    min_first: float
    min_first_at: tuple
    min_second: float
    min_second_at: tuple
    scale: float


def _evaluator(fid, spec: QuadratureSpec):
    if isinstance(fid, str):
        if fid == CONTROL_Z2P1:
            return lambda z: z * z + 1.0
        raise ParameterError("unknown function name %r" % (fid,))
    if isinstance(fid, FunctionId):
        return lambda z: evaluate(fid, z, spec)
    raise ParameterError("expected a FunctionId or %r" % (CONTROL_Z2P1,))


def scan_real_zeros(
    fid,
    x_lo: float,
    x_hi: float,
    step: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> ZeroList:
    """Sign-change scan on [x_lo, x_hi] with bisection refinement.

    Finds every sign change of the (real-valued) function on the step
    grid and refines each bracket to width 1e-12 * max(1, |x|). Makes no
    completeness claim beyond the grid resolution.
    """
    x_lo = float(x_lo)
    x_hi = float(x_hi)
    step = float(step)
    if not (step > 0.0 and math.isfinite(step)):
        raise ParameterError("scan step must be positive")
    if not (x_lo < x_hi):
        raise ParameterError("scan interval must satisfy x_lo < x_hi")
    f = _evaluator(fid, spec)

    n = int(math.floor((x_hi - x_lo) / step + 0.5))
    xs = [x_lo + i * step for i in range(n + 1)]
    if xs[-1] > x_hi:
        xs[-1] = x_hi
    elif xs[-1] < x_hi - 0.5 * step:
        xs.append(x_hi)
    vals = []
    for x in xs:
        v = float(f(x))
        if not math.isfinite(v):
            raise EvaluationError("non-finite sample at x=%.17g" % x)
        vals.append(v)

    scale = max(abs(v) for v in vals)
    zeros = []
    changed = set()
    for i in range(len(xs) - 1):
        a, b = xs[i], xs[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            zeros.append((a, 0.0))
            changed.add(i)
            continue
        if fb == 0.0:
            continue  # registered when the next interval starts there
        if (fa < 0.0) == (fb < 0.0):
            continue
        changed.add(i)
        changed.add(i + 1)
        while b - a > _BISECT_REL * max(1.0, abs(a), abs(b)):
            m = 0.5 * (a + b)
            fm = float(f(m))
            if fm == 0.0:
                a = b = m
                break
            if (fm < 0.0) == (fa < 0.0):
                a, fa = m, fm
            else:
                b, fb = m, fm
        zeros.append((0.5 * (a + b), b - a))
    if vals[-1] == 0.0:
        zeros.append((xs[-1], 0.0))
        changed.add(len(xs) - 1)

    touches = []
    for i in range(1, len(xs) - 1):
        if i in changed or (i - 1) in changed or (i + 1) in changed:
            continue
        v = abs(vals[i])
        if (
            v < _TOUCH_REL * scale
            and v <= abs(vals[i - 1])
            and v <= abs(vals[i + 1])
        ):
            touches.append(xs[i])
    return ZeroList(zeros=tuple(zeros), suspect_touches=tuple(touches))


def _boundary_walk(f, rect: Rectangle, min_points: int = 0):
    """Total phase change around the boundary plus modulus extremes.

    Adaptive: any interval whose endpoint ratio jumps by pi/2 or more in
    phase is split until resolved or the global point budget (2^20) runs
    out. min_points raises the initial per-edge sample count so callers
    can confirm the answer is resolution-independent.
    Returns (winding_float, min_modulus, max_modulus, points_used).
    """
    corners = rect.corners()
    count = [0]
    vmin = [math.inf]
    vmax = [0.0]

    def sample(z):
        count[0] += 1
        if count[0] > _MAX_BOUNDARY_POINTS:
            raise PhaseResolutionError(
                "boundary subdivision exceeded %d points" % _MAX_BOUNDARY_POINTS
            )
        v = complex(f(z))
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise EvaluationError("non-finite boundary value at %s" % (z,))
        av = abs(v)
        if av < vmin[0]:
            vmin[0] = av
        if av > vmax[0]:
            vmax[0] = av
        if av == 0.0:
            raise BoundaryZeroError(
                "boundary passes through a zero at %s" % (z,), point=z
            )
        return v

    total = 0.0
    half_pi = 0.5 * math.pi
    for k in range(4):
        z0 = corners[k]
        z1 = corners[(k + 1) % 4]
        n0 = max(16, min(256, int(8.0 * abs(z1 - z0))), min_points)
        pts = [z0 + (z1 - z0) * (i / n0) for i in range(n0 + 1)]
        fv = [sample(z) for z in pts]
        # ordered stack walk; total phase is additive over subintervals
        stack = [
            (pts[i], fv[i], pts[i + 1], fv[i + 1])
            for i in range(n0 - 1, -1, -1)
        ]
        while stack:
            za, fa, zb, fb = stack.pop()
            d = cmath.phase(fb / fa)
            if abs(d) < half_pi:
                total += d
                continue
            if abs(zb - za) < 1e-9 * max(1.0, abs(za)):
                # the phase jump refuses to resolve on a vanishing interval,
                # which is how walking over (or within ~1e-9 of) a zero looks
                raise BoundaryZeroError(
                    "phase unresolvable near %s" % (0.5 * (za + zb),),
                    point=0.5 * (za + zb),
                )
            zm = 0.5 * (za + zb)
            fm = sample(zm)
            stack.append((zm, fm, zb, fb))
            stack.append((za, fa, zm, fm))
    return total / (2.0 * math.pi), vmin[0], vmax[0], count[0]


def _winding_details(
    fid, rect: Rectangle, spec: QuadratureSpec, min_points: int = 0
):
    f = _evaluator(fid, spec)
    raw, vmin, vmax, used = _boundary_walk(f, rect, min_points)
    n = int(round(raw))
    if abs(raw - n) > 0.05:
        raise PhaseResolutionError(
            "winding sum %.6f did not settle on an integer" % raw
        )
    return n, vmin, vmax, used


def count_zeros_rectangle(
    fid,
    rect: Rectangle,
    spec: QuadratureSpec = DEFAULT_SPEC,
    boundary_points: int = 0,
) -> int:
    """Zeros inside the rectangle, with multiplicity, by winding number.

    boundary_points floors the initial per-edge sampling of the adaptive
    walk; doubling it and comparing counts is the standard stability check.
    """
    return _winding_details(fid, rect, spec, boundary_points)[0]


def certify_reality(
    fid,
    rect: Rectangle,
    step: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> RectCertificate:
    """Compare the winding count with the real-axis sign-change count.

    The rectangle must be symmetric about the real axis, where conjugate
    pairing would otherwise hide non-real zeros from the comparison.
    """
    if abs(rect.y_lo + rect.y_hi) > 1e-12 * max(1.0, abs(rect.y_hi)):
        raise ParameterError(
            "certification rectangle must be symmetric about the real axis"
        )
    winding, vmin, _vmax, _used = _winding_details(fid, rect, spec)
    zl = scan_real_zeros(fid, rect.x_lo, rect.x_hi, step, spec)
    found = len(zl)
    # a completed boundary walk already implies no zero within ~1e-9 of
    # the boundary; the modulus just documents the observed clearance
    certified = winding == found and vmin > 0.0
    return RectCertificate(
        rect=rect,
        winding_count=winding,
        real_zeros_found=found,
        certified=certified,
        boundary_min_modulus=vmin,
    )


def jensen_scan(
    fid,
    x_grid,
    y_grid,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> JensenReport:
    """Minima of y d/dy |F|^2 and d2/dy2 |F|^2 over the grid.

    Both quantities are nonnegative everywhere exactly when every zero is
    real, so the minima are one-number summaries of the certificate grid.
    Derivatives come from 5-point central differences in y (h = 1e-3 for
    the first, 3e-3 for the second).
    """
    f = _evaluator(fid, spec)
    xs = [float(x) for x in x_grid]
    ys = [float(y) for y in y_grid]
    if not xs or not ys:
        raise ParameterError("jensen grids must be non-empty")

    cache = {}

    def m2(x, y):
        key = (x, y)
        v = cache.get(key)
        if v is None:
            w = complex(f(complex(x, y)))
            v = w.real * w.real + w.imag * w.imag
            cache[key] = v
        return v

    h1 = 1e-3
    h2 = 3e-3
    best1 = math.inf
    at1 = None
    best2 = math.inf
    at2 = None
    for x in xs:
        for y in ys:
            if y == 0.0:
                q1 = 0.0
            else:
                d1 = (
                    m2(x, y - 2.0 * h1)
                    - 8.0 * m2(x, y - h1)
                    + 8.0 * m2(x, y + h1)
                    - m2(x, y + 2.0 * h1)
                ) / (12.0 * h1)
                q1 = y * d1
            q2 = (
                -m2(x, y - 2.0 * h2)
                + 16.0 * m2(x, y - h2)
                - 30.0 * m2(x, y)
                + 16.0 * m2(x, y + h2)
                - m2(x, y + 2.0 * h2)
            ) / (12.0 * h2 * h2)
            if q1 < best1:
                best1, at1 = q1, (x, y)
            if q2 < best2:
                best2, at2 = q2, (x, y)
    scale = max(cache.values())
    return JensenReport(
        min_first=best1,
        min_first_at=at1,
        min_second=best2,
        min_second_at=at2,
        scale=scale,
    )
