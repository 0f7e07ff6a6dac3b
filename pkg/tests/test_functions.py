"""Transform evaluators against independent oracles.

Frozen references (mpmath, 40 digits) sit above the tests that use them;
live mpmath cross-checks back the frozen numbers up at test time.
"""

import cmath
import math

import mpmath as mp
import pytest

from realzeros.errors import DomainError, OrderError, ParameterError
from realzeros.functions import (
    FunctionId,
    PhiTruncation,
    eval_F,
    eval_K_iz,
    eval_K_nu,
    eval_riemann_xi,
    eval_xi_general,
    eval_xi_star,
    eval_xi_star_star,
    evaluate,
    phi,
)

TWO_PI = 2.0 * math.pi

# mpmath besselk / theta-sum / completed-zeta references
K0_1 = 0.42102443824070833334
K_2I_1 = 0.0806169976223659786       # K_{2i}(1), real by symmetry
K_2I_2PI = 0.000680155637190951814   # K_{2i}(2 pi)
PHI_0 = 0.89339380093424688817
PHI_02 = 0.60854970533391501797
PHI_05 = 0.060377451784348655062
PHI_1 = 2.755627881271267531e-7
XI_0 = 0.49712077818831410991        # completed zeta at the symmetry point
XI_5 = 0.27554999734420419223


def test_k_real_order_oracle():
    assert eval_K_nu(0.0, 1.0) == pytest.approx(K0_1, rel=1e-13)
    # half-integer closed form K_{1/2}(a) = sqrt(pi/(2a)) e^{-a}
    for a in (0.5, 1.0, 3.0):
        want = math.sqrt(math.pi / (2.0 * a)) * math.exp(-a)
        assert eval_K_nu(0.5, a) == pytest.approx(want, rel=1e-13)


def test_k_imaginary_order_oracle():
    assert eval_K_nu(2j, 1.0) == pytest.approx(K_2I_1, rel=1e-13)
    assert eval_K_nu(2j, TWO_PI) == pytest.approx(K_2I_2PI, rel=1e-13)


def test_k_complex_order_against_mpmath():
    mp.mp.dps = 30
    for nu, a in [
        (0.5 + 3j, 2.0),
        (-2.25 + 5j, TWO_PI),
        (1.5 - 4j, 1.0),
        (-0.75 + 0.25j, 5.0),
    ]:
        want = complex(mp.besselk(nu, a))
        got = complex(eval_K_nu(nu, a))
        assert abs(got - want) <= 1e-12 * max(abs(want), 1e-300), (nu, a)


def test_k_symmetries():
    # K_nu = K_{-nu}, and conjugating the order conjugates the value
    for nu in (1.5 + 2j, -0.5 + 7j):
        for a in (1.0, TWO_PI):
            assert complex(eval_K_nu(nu, a)) == pytest.approx(
                complex(eval_K_nu(-nu, a)), rel=1e-13
            )
            assert complex(eval_K_nu(nu.conjugate(), a)) == pytest.approx(
                complex(eval_K_nu(nu, a)).conjugate(), rel=1e-13
            )


def test_k_iz_matches_order_rotation():
    # K_{iz}(a): z = x + iy maps to order ix - y
    for z in (3.0, 2.0 + 1.0j, -4.0 + 0.5j):
        for a in (1.0, TWO_PI):
            direct = complex(eval_K_iz(z, a))
            rotated = complex(eval_K_nu(complex(-z.imag, z.real), a))
            assert direct == pytest.approx(rotated, rel=1e-14)


def test_k_real_result_is_float():
    v = eval_K_nu(2j, 1.0)
    assert isinstance(v, float)


def test_k_rejects_bad_a():
    with pytest.raises(ParameterError):
        eval_K_nu(0.0, 0.0)
    with pytest.raises(ParameterError):
        eval_K_nu(0.0, -2.0)


def test_k_order_cap():
    # |Re nu| has a documented ceiling; far beyond it must fail loudly
    with pytest.raises(OrderError):
        eval_K_nu(200.0, 1.0)


# ---------------------------------------------------------------------------
# the theta-derivative weight


def test_phi_oracle_values():
    assert phi(0.0) == pytest.approx(PHI_0, rel=1e-13)
    assert phi(0.2) == pytest.approx(PHI_02, rel=1e-13)
    assert phi(0.5) == pytest.approx(PHI_05, rel=1e-13)
    assert phi(1.0) == pytest.approx(PHI_1, rel=1e-12)


def test_phi_evenness_where_conditioned():
    # Phi(-u) = Phi(u) holds through a theta identity with massive
    # cancellation on the negative side; the achievable agreement decays
    # with the condition number, so the bound is split by location.
    for u in (0.2, 0.5):
        assert phi(-u) == pytest.approx(phi(u), rel=1e-12)
    assert abs(phi(-1.0) - phi(1.0)) <= 1e-14


def test_phi_positive_and_decaying():
    vals = [phi(u) for u in (0.0, 0.5, 1.0, 1.5, 2.0)]
    assert all(v > 0.0 for v in vals)
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_phi_truncation_control():
    # a 1-term truncation must reproduce the n = 1 term exactly
    u = 0.3
    one = phi(u, PhiTruncation(1))
    n2 = 1.0
    want = (
        4.0 * n2 * n2 * math.pi**2 * math.exp(4.5 * u)
        - 6.0 * n2 * math.pi * math.exp(2.5 * u)
    ) * math.exp(-n2 * math.pi * math.exp(2.0 * u))
    assert one == want
    with pytest.raises(ParameterError):
        PhiTruncation(0)


# ---------------------------------------------------------------------------
# the transform family


def test_xi_star_equals_its_k_sum():
    # 16 pi^2 int cosh(4.5u) e^{-2 pi cosh 2u} cos(zu) du collapses to
    # 4 pi^2 [K_{iz/2 - 9/4}(2 pi) + K_{iz/2 + 9/4}(2 pi)]
    for z in (0.0, 2.0, 10.0, 5.0 + 1.0j):
        lhs = complex(eval_xi_star(z))
        half_iz = complex(-z.imag / 2.0, z.real / 2.0)
        rhs = 4.0 * math.pi**2 * (
            complex(eval_K_nu(half_iz - 2.25, TWO_PI))
            + complex(eval_K_nu(half_iz + 2.25, TWO_PI))
        )
        assert abs(lhs - rhs) <= 1e-13 * max(abs(lhs), 1.0), z


def test_xi_star_star_matches_general_form():
    # the integrand carries e^{-2 pi cosh 2u}; substituting u -> u/2 maps
    # it onto the generic single-cosh comb at half the frequency
    for z in (0.0, 3.0, 12.0):
        a = eval_xi_star_star(z)
        b = 0.5 * eval_xi_general(
            16.0 * math.pi**2, 24.0 * math.pi, 2.25, 1.25, TWO_PI, z / 2.0
        )
        assert a == pytest.approx(b, rel=1e-13)


def test_f_reduces_to_twice_k_at_c_zero():
    # F_{a,0}(z) = 2 K_{iz}(a)
    for a, z in [(1.0, 2.0), (TWO_PI, 5.0), (2.0, 1.0 + 0.5j)]:
        assert complex(eval_F(a, 0.0, z)) == pytest.approx(
            2.0 * complex(eval_K_iz(z, a)), rel=1e-12
        )


def test_f_even_and_schwarz():
    for a, c in [(1.0, 2.0), (TWO_PI, 2.25)]:
        for z in (1.5, 2.0 + 1.0j):
            v = complex(eval_F(a, c, z))
            assert complex(eval_F(a, c, -z)) == pytest.approx(v, rel=1e-13)
            assert complex(eval_F(a, c, z.conjugate())) == pytest.approx(
                v.conjugate(), rel=1e-13
            )


def test_riemann_xi_center_oracle():
    assert eval_riemann_xi(0.0) == pytest.approx(XI_0, abs=1e-13)
    assert eval_riemann_xi(5.0) == pytest.approx(XI_5, rel=1e-12)


def test_riemann_xi_against_mpmath_on_line():
    mp.mp.dps = 30

    def want(z):
        s = mp.mpf(1) / 2 + 1j * mp.mpmathify(z)
        v = 0.5 * s * (s - 1) * mp.pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s)
        return complex(v)

    for z in (1.0, 8.0, 14.0, 20.0):
        got = complex(eval_riemann_xi(z))
        assert abs(got - want(z)) <= 1e-12 * max(abs(want(z)), 1e-6), z


def test_evaluate_dispatch_matches_direct_calls():
    assert evaluate(FunctionId.k_order(1.0), 2.0) == eval_K_iz(2.0, 1.0)
    assert evaluate(FunctionId.f(1.0, 2.0), 3.0) == eval_F(1.0, 2.0, 3.0)
    assert evaluate(FunctionId.xi_star(), 4.0) == eval_xi_star(4.0)
    assert evaluate(FunctionId.riemann_xi(), 14.0) == eval_riemann_xi(14.0)


def test_function_id_validation():
    with pytest.raises(ParameterError):
        FunctionId.k_order(-1.0)
    with pytest.raises(ParameterError):
        FunctionId.f(0.0, 1.0)
    fid = FunctionId.f(1.0, 2.0)
    assert "F" in fid.describe()


def test_phi_asymptote_ratio_matches_direct_quotient():
    from realzeros.functions import phi_asymptote_ratio

    for u in (0.5, 1.0, 2.0, 2.5):
        asym = 4.0 * math.pi**2 * math.exp(4.5 * u - math.pi * math.exp(2.0 * u))
        assert phi_asymptote_ratio(u) == pytest.approx(phi(u) / asym, rel=1e-12)


def test_phi_asymptote_ratio_survives_underflow():
    from realzeros.functions import phi_asymptote_ratio

    # beyond u ~ 2.7 the direct quotient is 0/0 in doubles
    assert phi(2.8) == 0.0
    r = phi_asymptote_ratio(2.8)
    assert 0.99 < r < 1.0


def test_phi_asymptote_ratio_domain():
    from realzeros.functions import phi_asymptote_ratio

    with pytest.raises(DomainError):
        phi_asymptote_ratio(-0.5)
    with pytest.raises(DomainError):
        phi_asymptote_ratio(6.5)
