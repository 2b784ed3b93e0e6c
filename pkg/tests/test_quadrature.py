import math

import numpy as np
import pytest

from lightscope.quadrature import (
    Integrand1D, NonFiniteIntegrand, integrate_complex,
    integrate_weighted_recoil, panel_count, recoil_nodes, recoil_weight_norm,
    scattering_weight_raw,
)


def test_polynomial_exact():
    f = Integrand1D(lambda x: x * x)
    assert integrate_complex(f, (0.0, 1.0)) == pytest.approx(1.0 / 3.0, abs=1e-14)


def test_oscillatory_against_antiderivative():
    # int_0^B e^{i w x} dx = (e^{i w B} - 1) / (i w)
    w, b = 37.0, 4.0
    f = Integrand1D(lambda x: np.exp(1j * w * x), phase_rate=w)
    exact = (np.exp(1j * w * b) - 1.0) / (1j * w)
    assert integrate_complex(f, (0.0, b)) == pytest.approx(exact, abs=1e-12)


def test_full_cycles_cancel():
    w = 5.0
    f = Integrand1D(lambda x: np.exp(1j * w * x), phase_rate=w)
    val = integrate_complex(f, (0.0, 2 * math.pi))
    assert abs(val) < 1e-12


def test_vector_valued_integrand():
    # one quadrature pass evaluating several frequencies at once
    ws = np.array([1.0, 10.0, 25.0])
    f = Integrand1D(lambda x: np.exp(1j * ws * x), phase_rate=float(ws.max()))
    got = integrate_complex(f, (0.0, 1.0))
    exact = (np.exp(1j * ws) - 1.0) / (1j * ws)
    np.testing.assert_allclose(got, exact, atol=1e-12)


def test_rule_doubling_is_stable():
    w = 80.0
    f = Integrand1D(lambda x: np.exp(1j * w * x * x), phase_rate=2 * w * 3.0)
    a = integrate_complex(f, (0.0, 3.0), rule_order=16)
    b = integrate_complex(f, (0.0, 3.0), rule_order=32)
    assert abs(a - b) / abs(a) < 1e-10


def test_bad_inputs():
    f = Integrand1D(lambda x: 1.0)
    with pytest.raises(ValueError):
        integrate_complex(f, (1.0, 1.0))
    with pytest.raises(ValueError):
        integrate_complex(f, (0.0, 1.0), rule_order=1)
    bad = Integrand1D(lambda x: float("nan"))
    with pytest.raises(NonFiniteIntegrand):
        integrate_complex(bad, (0.0, 1.0))


def test_panel_count_scales_with_phase():
    assert panel_count(0.0, 1.0) == 1
    assert panel_count(math.pi, 1.0) == 4  # pi radians / (pi/4 per panel)
    assert panel_count(10.0, 2.0, minimum=30) == 30


def test_recoil_nodes_cover_interval():
    k = 2 * math.pi / 0.1
    kappas, wts = recoil_nodes(k)
    assert kappas.min() > 0.0 and kappas.max() < 2 * k
    assert wts.sum() == pytest.approx(2 * k, rel=1e-14)
    # samples floor is honored
    kap2, _ = recoil_nodes(k, samples=2 * kappas.size)
    assert kap2.size >= 2 * kappas.size


def test_weight_norm_closed_form():
    for lam in (0.1, 1.0, 100.0):
        k = 2 * math.pi / lam
        assert recoil_weight_norm(k) == pytest.approx(8 * k**3 / 3, rel=1e-13)


def test_weight_symmetric_about_k():
    k = 7.0
    kap = np.linspace(0, 2 * k, 11)
    np.testing.assert_allclose(scattering_weight_raw(kap, k),
                               scattering_weight_raw(2 * k - kap, k), rtol=1e-14)


def test_weighted_recoil_vs_fine_trapezoid():
    # independent oracle: dense trapezoid for int W(kappa) e^{-i kappa} dkappa
    lam = 0.1
    k = 2 * math.pi / lam
    got = integrate_weighted_recoil(lambda kap: np.exp(-1j * kap), k, phase_rate=1.0)
    kap = np.linspace(0.0, 2 * k, 400001)
    ref = np.trapezoid(scattering_weight_raw(kap, k) * np.exp(-1j * kap), kap)
    assert got == pytest.approx(ref, rel=1e-7)


def test_weighted_recoil_rejects_bad_k():
    with pytest.raises(ValueError):
        integrate_weighted_recoil(lambda kap: 1.0, 0.0)
