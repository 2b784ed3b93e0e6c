import dataclasses
import math

import numpy as np
import pytest

import lightscope as ls
from lightscope.apparatus import DetectorGrid
from lightscope.patterns import (
    AtomPattern, JointPattern, WindowTooNarrow, central_window,
    decohered_pattern, farfield_partial_pattern, fringe_count,
    fringe_phase_shift, fresnel_phase, imaging_partial_pattern, l1_distance,
    no_photon_patterns, slit_amplitude, visibility, wrap_phase,
)
from lightscope.photon_modes import FarField, ImagePoint, SlitOrigin, slit_overlap


def _cosine_pattern(config, contrast=1.0, phase=0.0, n_fringes=8):
    grid = ls.default_grid(config, fringes_per_side=n_fringes)
    theta = 2 * math.pi * grid.positions / config.fringe_period
    vals = 1.0 + contrast * np.cos(theta - phase)
    return AtomPattern(grid, vals, "synthetic")


def test_pattern_rejects_mismatched_shapes(grid):
    with pytest.raises(ValueError):
        AtomPattern(grid, np.ones(3))


def test_pattern_negativity_clamp(grid):
    vals = np.ones(len(grid))
    vals[0] = -1e-14
    pat = AtomPattern(grid, vals)
    assert pat.values[0] == 0.0
    vals[0] = -0.5
    with pytest.raises(ValueError):
        AtomPattern(grid, vals)


def test_normalized_unit_integral(base_patterns, grid):
    pn = base_patterns["coherent"].normalized()
    assert np.trapezoid(pn.values, grid.positions) == pytest.approx(1.0, rel=1e-12)


def test_joint_pattern_scale_sign(base_patterns):
    with pytest.raises(ValueError):
        JointPattern(0.0, base_patterns["coherent"], -1.0)


def test_fresnel_phase_quadratic(config):
    p0, ell = config.atom_momentum, config.screen_distance
    assert fresnel_phase(0.3, 0.1, config) == pytest.approx(p0 * 0.04 / (2 * ell))
    assert fresnel_phase(0.1, 0.3, config) == pytest.approx(
        fresnel_phase(0.3, 0.1, config))


def test_slit_amplitude_against_dense_trapezoid(config):
    # independent oracle for the aperture integral at a few detector points
    d, a = config.slit_separation, config.slit_width
    xp = np.linspace(0.5 * d - 0.5 * a, 0.5 * d + 0.5 * a, 200001)
    for x in (0.0, 0.37, -1.2):
        ref = np.trapezoid(np.exp(1j * fresnel_phase(x, xp, config)), xp)
        got = slit_amplitude(x, "R", None, config)
        assert got == pytest.approx(ref, rel=1e-9)


def test_slit_amplitude_mirror_symmetry(config, bare_amplitudes):
    psi_l, psi_r = bare_amplitudes
    np.testing.assert_allclose(psi_r, psi_l[::-1], rtol=0, atol=1e-13 * np.abs(psi_l).max())


def test_slit_amplitude_argument_checks(config):
    with pytest.raises(ValueError):
        slit_amplitude(0.0, "both", None, None)
    with pytest.raises(ValueError):
        slit_amplitude(0.0, "up", None, config)


def test_no_photon_pattern_relations(base_patterns, grid):
    coh = base_patterns["coherent"].values
    inc = base_patterns["incoherent"].values
    sl = base_patterns["single_L"].values
    sr = base_patterns["single_R"].values
    np.testing.assert_allclose(inc, 0.5 * (sl + sr), rtol=1e-12)
    # coherent pattern is even and doubles the incoherent value at center
    np.testing.assert_allclose(coh, coh[::-1], rtol=0, atol=1e-12 * coh.max())
    i0 = len(grid) // 2
    assert coh[i0] / inc[i0] == pytest.approx(2.0, abs=1e-9)


def test_farfield_partial_reduces_to_coherent_at_zero_recoil(config, grid, base_patterns):
    jp = farfield_partial_pattern(0.0, config, grid)
    np.testing.assert_allclose(jp.atom_pattern.values, base_patterns["coherent"].values,
                               rtol=1e-12)
    assert jp.joint_scale == pytest.approx(2 * config.photon_wavenumber**2)


def test_farfield_partial_rejects_out_of_range(config, grid):
    with pytest.raises(ls.DomainError):
        farfield_partial_pattern(-1.0, config, grid)


def test_slit_origin_composition(config, grid, bare_amplitudes):
    psi_l, psi_r = bare_amplitudes
    gamma = slit_overlap(config.photon_wavelength, config.slit_separation).value
    amp = slit_amplitude(grid.positions, "both", SlitOrigin("R"), config)
    expect = (gamma * psi_l + psi_r) / math.sqrt(2.0)
    np.testing.assert_allclose(amp, expect, rtol=0, atol=1e-13 * np.abs(expect).max())


def test_imaging_partial_at_dead_point_is_single_slit(config, grid, base_patterns):
    # lambda = d/10 puts the left slit exactly on a kernel zero for x_gamma = d/2
    jp = imaging_partial_pattern(0.5, config, grid)
    assert l1_distance(jp.atom_pattern, base_patterns["single_R"]) < 1e-12


def test_imaging_joint_scale_tracks_kernel_mass(config, grid):
    near = imaging_partial_pattern(0.5, config, grid).joint_scale
    far = imaging_partial_pattern(37.0, config, grid).joint_scale
    assert near > 0 and far < 1e-3 * near


def test_decohered_equals_overlap_mixture(config, grid, bare_amplitudes):
    # recoil average must match the closed-form mixture through Gamma
    psi_l, psi_r = bare_amplitudes
    gamma = slit_overlap(config.photon_wavelength, config.slit_separation).value
    expect = 0.5 * (np.abs(psi_l) ** 2 + np.abs(psi_r) ** 2) \
        + np.real(psi_l * np.conj(psi_r) * gamma)
    dec = decohered_pattern(config, grid)
    np.testing.assert_allclose(dec.values, expect, rtol=0, atol=1e-12 * expect.max())


def test_visibility_recovers_synthetic_contrast(config):
    for contrast in (0.2, 0.7, 1.0):
        pat = _cosine_pattern(config, contrast=contrast)
        win = central_window(config)
        assert visibility(pat, win) == pytest.approx(contrast, abs=2e-3)


def test_visibility_window_too_narrow(base_patterns):
    with pytest.raises(WindowTooNarrow):
        visibility(base_patterns["coherent"], (0.0, 1e-9))


def test_visibility_of_smooth_envelope(config, base_patterns):
    # window sits on top of the right-slit envelope, where it is flat
    half = 2.0 * config.fringe_period
    center = 0.5 * config.slit_separation
    assert visibility(base_patterns["single_R"], (center - half, center + half)) < 0.05


def test_fringe_phase_shift_synthetic(config):
    ref = _cosine_pattern(config, phase=0.0)
    for phase in (0.4, -1.3, 2.9):
        pat = _cosine_pattern(config, phase=phase)
        got = fringe_phase_shift(pat, ref, config)
        assert abs(wrap_phase(got - (-phase))) < 1e-3


def test_fringe_phase_shift_requires_shared_grid(config, base_patterns):
    other = _cosine_pattern(config)
    with pytest.raises(ValueError):
        fringe_phase_shift(base_patterns["coherent"], other, config)


def test_wrap_phase_range():
    assert wrap_phase(math.pi) == pytest.approx(math.pi)
    assert wrap_phase(-math.pi) == pytest.approx(math.pi)
    assert wrap_phase(3 * math.pi) == pytest.approx(math.pi)
    assert wrap_phase(0.3 + 8 * math.pi) == pytest.approx(0.3)


def test_fringe_count_synthetic(config):
    pat = _cosine_pattern(config, n_fringes=120)  # grid outlasts the envelope
    n = fringe_count(pat, config)
    # maxima per period inside the envelope halfwidth
    expect = 2 * int(config.envelope_halfwidth / config.fringe_period) + 1
    assert abs(n - expect) <= 2


def test_l1_distance_basic(grid, base_patterns):
    coh = base_patterns["coherent"]
    assert l1_distance(coh, coh) == 0.0
    d = l1_distance(base_patterns["single_L"], base_patterns["single_R"])
    assert 0.8 < d <= 1.0  # nearly disjoint humps
    with pytest.raises(ValueError):
        l1_distance(coh, _cosine_pattern(ls.ApparatusConfig()))
