"""Zero location, winding counts, and reality certificates."""

import math

import pytest

from realzeros.errors import ParameterError
from realzeros.functions import FunctionId
from realzeros.zeros import (
    CONTROL_Z2P1,
    JensenReport,
    Rectangle,
    ZeroList,
    certify_reality,
    count_zeros_rectangle,
    jensen_scan,
    scan_real_zeros,
)

TWO_PI = 2.0 * math.pi

# Independently tabulated to more digits than the scan resolves (Odlyzko's
# tables give 14.134725142, 21.022039639, 25.010857580 for the first three
# ordinates).
RIEMANN_T1 = 14.134725142
RIEMANN_T2 = 21.022039639
RIEMANN_T3 = 25.010857580

# First positive zero of K_{ix}(2pi) in x, from a 40-digit mpmath root
# solve of besselk(ix, 2pi) frozen to the digits the scan must hit.
K_2PI_X1 = 9.768770083509978


def _riemann():
    return FunctionId.riemann_xi()


def _k2pi():
    return FunctionId.k_order(TWO_PI)


def _xistar():
    return FunctionId.xi_star()


def test_riemann_first_zeros():
    zl = scan_real_zeros(_riemann(), 10.0, 26.0, 0.05)
    locs = zl.locations()
    assert len(locs) == 3
    assert abs(locs[0] - RIEMANN_T1) <= 1e-9
    assert abs(locs[1] - RIEMANN_T2) <= 1e-9
    assert abs(locs[2] - RIEMANN_T3) <= 1e-9


def test_k_bessel_first_zero():
    zl = scan_real_zeros(_k2pi(), 9.0, 10.0, 0.05)
    assert len(zl) == 1
    assert abs(zl.locations()[0] - K_2PI_X1) <= 1e-9


def test_scan_step_halving_stable():
    a = scan_real_zeros(_xistar(), 0.0, 20.0, 0.1)
    b = scan_real_zeros(_xistar(), 0.0, 20.0, 0.05)
    assert len(a) == len(b)
    for la, lb in zip(a.locations(), b.locations()):
        assert abs(la - lb) <= 1e-9


def test_scan_rejects_bad_grid():
    with pytest.raises(ParameterError):
        scan_real_zeros(_xistar(), 5.0, 1.0, 0.1)
    with pytest.raises(ParameterError):
        scan_real_zeros(_xistar(), 0.0, 1.0, 0.0)


def test_certificates_hold():
    cases = [
        (_xistar(), Rectangle(0.0, 20.0, -2.0, 2.0), 2),
        (_k2pi(), Rectangle(0.0, 20.0, -2.0, 2.0), 5),
        (_riemann(), Rectangle(0.0, 30.0, -2.0, 2.0), 3),
    ]
    for fid, rect, expect in cases:
        cert = certify_reality(fid, rect, 0.05)
        assert cert.winding_count == expect
        assert cert.real_zeros_found == expect
        assert cert.certified
        assert cert.boundary_min_modulus > 0.0


def test_winding_additive_over_split():
    left = count_zeros_rectangle(_k2pi(), Rectangle(0.0, 15.0, -2.0, 2.0))
    right = count_zeros_rectangle(_k2pi(), Rectangle(15.0, 20.0, -2.0, 2.0))
    total = count_zeros_rectangle(_k2pi(), Rectangle(0.0, 20.0, -2.0, 2.0))
    assert left + right == total == 5


def test_control_exposes_non_real_pair():
    cert = certify_reality(CONTROL_Z2P1, Rectangle(-2.0, 2.0, -2.0, 2.0), 0.05)
    assert cert.winding_count == 2
    assert cert.real_zeros_found == 0
    assert not cert.certified


def test_certify_requires_symmetric_rect():
    with pytest.raises(ParameterError):
        certify_reality(_xistar(), Rectangle(0.0, 10.0, -1.0, 3.0), 0.1)


def test_unknown_string_function():
    with pytest.raises(ParameterError):
        scan_real_zeros("no-such-function", 0.0, 1.0, 0.1)


def test_rectangle_validation():
    with pytest.raises(ParameterError):
        Rectangle(1.0, 0.0, -1.0, 1.0)
    with pytest.raises(ParameterError):
        Rectangle(0.0, 1.0, 1.0, 1.0)
    with pytest.raises(ParameterError):
        Rectangle(0.0, math.inf, -1.0, 1.0)
    r = Rectangle(0.0, 1.0, -1.0, 1.0)
    assert r.corners()[2] == 1.0 + 1.0j


def test_zerolist_ordering_enforced():
    ZeroList(zeros=((1.0, 1e-12), (2.0, 1e-12)))
    with pytest.raises(ParameterError):
        ZeroList(zeros=((2.0, 1e-12), (1.0, 1e-12)))


def test_jensen_nonnegative_for_real_zero_function():
    xs = [0.0, 5.0, 10.0, 14.0]
    ys = [0.0, 0.5, 1.0]
    rep = jensen_scan(_xistar(), xs, ys)
    assert isinstance(rep, JensenReport)
    floor = -1e-8 * max(rep.scale, 1e-300)
    assert rep.min_first >= floor
    assert rep.min_second >= floor


def test_jensen_control_fails_at_origin():
    rep = jensen_scan(CONTROL_Z2P1, [-1.0, 0.0, 1.0], [0.0, 0.5, 1.0])
    # |z^2+1|^2 has d2/dy2 = -4 at the origin: the non-real pair at +/-i
    # shows up as genuine negativity, not noise
    assert rep.min_second < -3.9
    assert rep.min_second_at == (0.0, 0.0)


def test_jensen_rejects_empty_grid():
    with pytest.raises(ParameterError):
        jensen_scan(_xistar(), [], [0.0])
