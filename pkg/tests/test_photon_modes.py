import math

import numpy as np
import pytest

from lightscope.photon_modes import (
    DomainError, FarField, ImagePoint, OverlapAmplitude, OverlapOutOfRange,
    SlitOrigin, farfield_phase, imaging_basis_overlap, imaging_kernel,
    scattering_weight, slit_overlap,
)
from lightscope.quadrature import scattering_weight_raw


def test_mode_tags():
    assert SlitOrigin("L").side == "L"
    with pytest.raises(DomainError):
        SlitOrigin("left")
    assert FarField(1.5).kappa_x == 1.5
    with pytest.raises(DomainError):
        ImagePoint(float("inf"))


def test_scattering_weight_domain_and_shape():
    k = 2 * math.pi / 0.1
    assert scattering_weight(0.0, k) == pytest.approx(2 * k * k)
    assert scattering_weight(2 * k, k) == pytest.approx(2 * k * k)
    assert scattering_weight(k, k) == pytest.approx(k * k)  # minimum at kappa = k
    with pytest.raises(DomainError):
        scattering_weight(-0.1, k)
    with pytest.raises(DomainError):
        scattering_weight(2 * k + 0.1, k)


def test_farfield_phase_unimodular():
    xp = np.linspace(-0.5, 0.5, 7)
    ph = farfield_phase(xp, 31.7)
    np.testing.assert_allclose(np.abs(ph), 1.0, rtol=1e-15)
    assert farfield_phase(0.0, 5.0) == pytest.approx(1.0)


def test_imaging_kernel_peak_and_zeros():
    lam = 0.1
    k = 2 * math.pi / lam
    assert imaging_kernel(0.3, 0.3, lam) == pytest.approx(1.0)
    # zeros every half wavelength away from the peak
    for n in (1, 2, 5):
        assert imaging_kernel(0.0, n * lam / 2, lam) == pytest.approx(0.0, abs=1e-15)
    # symmetric in the offset
    assert imaging_kernel(0.2, 0.0, lam) == pytest.approx(imaging_kernel(0.0, 0.2, lam))


def test_overlap_limits():
    # long wavelength: photon cannot resolve the slits
    assert slit_overlap(100.0).magnitude > 0.99
    assert slit_overlap(1e4).magnitude > 1.0 - 1e-6
    # short wavelength: slit states nearly orthogonal
    assert slit_overlap(0.1).magnitude < 0.1


def test_overlap_against_fine_trapezoid():
    # independent dense-trapezoid oracle for the weighted recoil average
    for lam in (0.1, 1.0, 10.0):
        k = 2 * math.pi / lam
        kap = np.linspace(0.0, 2 * k, 400001)
        w = scattering_weight_raw(kap, k)
        ref = np.trapezoid(w * np.exp(-1j * kap), kap) / np.trapezoid(w, kap)
        got = slit_overlap(lam).value
        assert got == pytest.approx(ref, abs=5e-9)


def test_overlap_scale_invariance():
    a = slit_overlap(0.4, d=1.0).value
    b = slit_overlap(2.0, d=5.0).value
    assert a == pytest.approx(b, abs=1e-12)


def test_overlap_amplitude_bounds():
    ok = OverlapAmplitude(0.5 + 0.1j, 1.0)
    assert ok.magnitude == pytest.approx(abs(0.5 + 0.1j))
    with pytest.raises(OverlapOutOfRange):
        OverlapAmplitude(1.1, 1.0)
    with pytest.raises(DomainError):
        slit_overlap(-1.0)


def test_imaging_basis_overlap_matches_displaced_kernel():
    # for the ideal lens the image-basis overlap collapses to h(d)
    for lam in (1.0, 10.0, 100.0):
        k = 2 * math.pi / lam
        expect = math.sin(k) / k  # h(u = d), d = 1
        assert imaging_basis_overlap(lam) == pytest.approx(expect, abs=2e-3)


def test_cross_basis_overlap_agreement():
    for lam in (0.1, 1.0, 10.0, 100.0):
        diff = abs(slit_overlap(lam).magnitude - abs(imaging_basis_overlap(lam)))
        assert diff <= 0.05
