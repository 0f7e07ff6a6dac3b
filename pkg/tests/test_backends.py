"""Compiled core vs pure-python fallback: same contracts, same numbers."""

import math
import os
import random
import subprocess
import sys

import pytest

from realzeros._backend import available_backends, backend_name, get_backend

BACKENDS = available_backends()


def _rel(got, want, scale=0.0):
    return abs(got - want) / max(abs(want), scale, 1e-300)


def test_backend_names():
    assert set(BACKENDS) >= {"python"}
    assert BACKENDS["python"].backend_name == "python"
    if "cython" in BACKENDS:
        assert BACKENDS["cython"].backend_name == "cython"
    assert backend_name in BACKENDS
    assert get_backend() is BACKENDS[backend_name]


needs_both = pytest.mark.skipif(
    "cython" not in BACKENDS, reason="compiled core not built"
)


@needs_both
def test_kbessel_sum_parity():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    rng = random.Random(7)
    for _ in range(40):
        a = rng.uniform(0.5, 8.0)
        nu_re = rng.uniform(-3.0, 3.0)
        nu_im = rng.uniform(-6.0, 6.0)
        n = rng.randrange(50, 400)
        args = (a, nu_re, nu_im, 0.0, 0.01, n)
        pre, pim, pab = py.kbessel_sum(*args)
        cre, cim, cab = cy.kbessel_sum(*args)
        # compare against the absolute channel: the signed sums can cancel
        # to far below the terms that built them
        assert abs(pre - cre) <= 1e-13 * max(pab, abs(pre))
        assert abs(pim - cim) <= 1e-13 * max(pab, abs(pim))
        assert _rel(cab, pab) <= 1e-13


@needs_both
def test_coshw_sum_parity():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    rng = random.Random(11)
    for _ in range(40):
        A = rng.uniform(1.0, 200.0)
        B = rng.choice([0.0, rng.uniform(0.0, A * 0.5)])
        p = rng.uniform(0.5, 4.5)
        q = rng.uniform(0.0, p)
        m = rng.choice([1.0, 2.0])
        c = rng.uniform(1.0, 7.0)
        z_re = rng.uniform(0.0, 25.0)
        z_im = rng.uniform(-2.0, 2.0)
        n = rng.randrange(100, 600)
        args = (A, B, p, q, m, c, z_re, z_im, 0.0, 0.008, n)
        pre, pim, pab = py.coshw_sum(*args)
        cre, cim, cab = cy.coshw_sum(*args)
        assert abs(pre - cre) <= 1e-13 * max(pab, abs(pre))
        assert abs(pim - cim) <= 1e-13 * max(pab, abs(pim))
        assert _rel(cab, pab) <= 1e-13


@needs_both
def test_hyp2f1_series_parity_bitwise():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    rng = random.Random(3)
    for _ in range(60):
        y = rng.uniform(-4.0, 4.0)
        w = rng.uniform(0.0, 0.5)
        ps, pok, pk = py.hyp2f1_series(y + 1.0, y + 1.0, 2.0, w, 1e-15, 6000, 8)
        cs, cok, ck = cy.hyp2f1_series(y + 1.0, y + 1.0, 2.0, w, 1e-15, 6000, 8)
        assert ps == cs
        assert pok == cok and pk == ck


@needs_both
def test_f_series_parity():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    rng = random.Random(19)
    cases = [(rng.uniform(0.05, 0.95), rng.uniform(-5.0, 5.0)) for _ in range(30)]
    cases += [(0.3, -2.0), (0.6, -1.0), (0.45, -63.0)]  # exact termination paths
    for t, y in cases:
        pa = py.f_series_sums(t, y, 1e-15, 40000)
        ca = cy.f_series_sums(t, y, 1e-15, 40000)
        assert pa[3] == ca[3] and pa[4] == ca[4], (t, y)
        for g, w in zip(ca[:3], pa[:3]):
            assert _rel(g, w, scale=max(map(abs, pa[:3]))) <= 1e-12, (t, y)


@needs_both
def test_phi_parity():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for z_re in (0.0, 5.0, 14.0):
        args = (z_re, 0.4, 0.0, 0.01, 500, 60)
        pre, pim, pab = py.phi_sum(*args)
        cre, cim, cab = cy.phi_sum(*args)
        assert abs(pre - cre) <= 1e-13 * max(pab, abs(pre))
        assert abs(pim - cim) <= 1e-13 * max(pab, abs(pim))
    import numpy as np

    us = np.linspace(0.0, 3.0, 97)
    pv = py.phi_values(us, 60)
    cv = cy.phi_values(us, 60)
    assert max(abs(a - b) / max(abs(a), 1e-300) for a, b in zip(pv, cv)) <= 1e-13


def test_env_selection_round_trip():
    # selection happens at import, so each mode needs a fresh interpreter
    script = (
        "from realzeros._backend import backend_name; print(backend_name)"
    )
    auto_pick = "cython" if "cython" in BACKENDS else "python"
    for mode, expect in [("python", "python"), ("auto", auto_pick)]:
        env = dict(os.environ, REALZEROS_BACKEND=mode)
        out = subprocess.run(
            [sys.executable, "-c", script],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        assert out.stdout.strip() == expect, mode


def test_env_selection_rejects_junk():
    env = dict(os.environ, REALZEROS_BACKEND="fortran")
    out = subprocess.run(
        [sys.executable, "-c", "import realzeros"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert out.returncode != 0
    assert "REALZEROS_BACKEND" in out.stderr
