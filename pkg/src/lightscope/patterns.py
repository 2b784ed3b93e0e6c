"""Atom probability patterns at the detector plane.

Single- and two-slit patterns without photons, partial patterns conditioned
on photon detection in the far-field or imaging bases, the recoil-averaged
(decohered) pattern, and fringe diagnostics (visibility, phase shift,
fringe count).  Patterns are stored unnormalized; comparisons normalize to
unit integral over the grid span.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .apparatus import ApparatusConfig, DetectorGrid
from .photon_modes import (
    DomainError, FarField, ImagePoint, SlitOrigin, farfield_phase,
    imaging_kernel, scattering_weight, slit_overlap,
)
from .quadrature import (
    Integrand1D, integrate_complex, integrate_weighted_recoil,
    recoil_weight_norm,
)

log = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
NEGATIVITY_TOL = 1e-12  # relative to the pattern maximum


class WindowTooNarrow(ValueError):
    """Visibility window holds too few samples to bracket fringe extrema."""


@dataclass(frozen=True)
class AtomPattern:
    """Sampled probability density on a detector grid (arbitrary scale)."""

    grid: DetectorGrid
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != self.grid.positions.shape:
            raise ValueError("values and grid shapes differ")
        object.__setattr__(self, "values", _clamp_nonnegative(vals, self.label))

    def normalized(self) -> "AtomPattern":
        total = np.trapezoid(self.values, self.grid.positions) if len(self.grid) > 1 \
            else float(self.values[0])
        if not total > 0:
            raise ValueError(f"pattern {self.label!r} has nonpositive integral")
        return AtomPattern(self.grid, self.values / total, self.label)


@dataclass(frozen=True)
class JointPattern:
    """Atom pattern conditioned on one photon coordinate.

    ``joint_scale`` carries the relative likelihood of that coordinate, so
    joint_scale * values is (up to a common constant) the joint density.
    """

    photon_coordinate: float
    atom_pattern: AtomPattern
    joint_scale: float

    def __post_init__(self):
        if self.joint_scale < 0:
            raise ValueError("joint_scale must be >= 0")


def _clamp_nonnegative(vals: np.ndarray, label: str) -> np.ndarray:
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    low = float(vals.min()) if vals.size else 0.0
    if low < -NEGATIVITY_TOL * max(scale, 1.0):
        raise ValueError(f"pattern {label!r} has negative density {low}")
    if low < 0.0:
        log.debug("clamping tiny negative densities (min %.3e) in %r", low, label)
        vals = np.where(vals < 0.0, 0.0, vals)
    return vals


def fresnel_phase(x, x_prime, config: ApparatusConfig):
    """Near-field propagation phase p0 (x - x')^2 / (2 L), hbar = 1."""
    dx = np.asarray(x, dtype=float) - np.asarray(x_prime, dtype=float)
    return config.atom_momentum * dx * dx / (2.0 * config.screen_distance)


def _slit_intervals(config: ApparatusConfig):
    d, a = config.slit_separation, config.slit_width
    return {"L": (-0.5 * d - 0.5 * a, -0.5 * d + 0.5 * a),
            "R": (0.5 * d - 0.5 * a, 0.5 * d + 0.5 * a)}


def _bare_slit_integral(x, side: str, config: ApparatusConfig, rule_order: int):
    """Aperture integral of e^{i Phi} over one slit; x may be an array.

    Memoized on (positions, side, config, rule_order): photon conditioning
    only rescales the bare integrals, so partial patterns on a common grid
    share them.
    """
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    out = _bare_slit_cached(xa.tobytes(), xa.shape, side, config, rule_order)
    return out.reshape(np.shape(x)) if np.shape(x) else complex(out[0])


@lru_cache(maxsize=16)
def _bare_slit_cached(xbytes, shape, side, config, rule_order):
    xa = np.frombuffer(xbytes, dtype=float).reshape(shape)
    lo, hi = _slit_intervals(config)[side]
    reach = float(np.max(np.abs(xa))) + max(abs(lo), abs(hi))
    rate = config.atom_momentum * reach / config.screen_distance
    f = Integrand1D(lambda xp: np.exp(1j * fresnel_phase(xa, xp, config)), phase_rate=rate)
    out = integrate_complex(f, (lo, hi), rule_order=rule_order)
    out.setflags(write=False)
    return out


def _photon_factors(photon, config: ApparatusConfig):
    """Per-slit overlap factors <gamma_n|gamma_{x'}>, held constant across
    each slit (evaluated at the slit centers)."""
    if photon is None:
        return 1.0 + 0.0j, 1.0 + 0.0j
    d = config.slit_separation
    lam = config.photon_wavelength
    if isinstance(photon, FarField):
        k = config.photon_wavenumber
        if not 0.0 <= photon.kappa_x <= 2.0 * k:
            raise DomainError(f"kappa_x = {photon.kappa_x} outside [0, {2 * k}]")
        return (complex(farfield_phase(-0.5 * d, photon.kappa_x)),
                complex(farfield_phase(0.5 * d, photon.kappa_x)))
    if isinstance(photon, ImagePoint):
        return (complex(imaging_kernel(photon.x_gamma, -0.5 * d, lam)),
                complex(imaging_kernel(photon.x_gamma, 0.5 * d, lam)))
    if isinstance(photon, SlitOrigin):
        gamma = slit_overlap(lam, d).value
        # <gamma_L|gamma_R> = conj(Gamma) with Gamma = <gamma_R|gamma_L>.
        if photon.side == "L":
            return 1.0 + 0.0j, np.conj(gamma)
        return gamma, 1.0 + 0.0j
    raise TypeError(f"unknown photon mode {photon!r}")


def _compose(psi_l, psi_r, fac_l, fac_r):
    return (fac_l * psi_l + fac_r * psi_r) / SQRT2


def slit_amplitude(x, side: str = "both", photon=None, config: ApparatusConfig = None,
                   rule_order: int = 16):
    """Complex detector amplitude for one slit or the coherent pair.

    With a photon mode given, the photon overlap factor multiplies each
    slit's contribution (recoil held constant across a slit).
    """
    if config is None:
        raise ValueError("config is required")
    fac_l, fac_r = _photon_factors(photon, config)
    if side == "L":
        return fac_l * _bare_slit_integral(x, "L", config, rule_order)
    if side == "R":
        return fac_r * _bare_slit_integral(x, "R", config, rule_order)
    if side == "both":
        psi_l = _bare_slit_integral(x, "L", config, rule_order)
        psi_r = _bare_slit_integral(x, "R", config, rule_order)
        return _compose(psi_l, psi_r, fac_l, fac_r)
    raise ValueError(f"side must be 'L', 'R' or 'both', got {side!r}")


def no_photon_patterns(config: ApparatusConfig, grid: DetectorGrid,
                       rule_order: int = 16) -> dict:
    """Single-slit, coherent and incoherent patterns on a common scale."""
    x = grid.positions
    psi_l = _bare_slit_integral(x, "L", config, rule_order)
    psi_r = _bare_slit_integral(x, "R", config, rule_order)
    single_l = np.abs(psi_l) ** 2
    single_r = np.abs(psi_r) ** 2
    coherent = np.abs(psi_l + psi_r) ** 2 / 2.0
    incoherent = 0.5 * (single_l + single_r)
    return {
        "single_L": AtomPattern(grid, single_l, "single_L"),
        "single_R": AtomPattern(grid, single_r, "single_R"),
        "coherent": AtomPattern(grid, coherent, "coherent"),
        "incoherent": AtomPattern(grid, incoherent, "incoherent"),
    }


def farfield_partial_pattern(kappa_x: float, config: ApparatusConfig, grid: DetectorGrid,
                             rule_order: int = 16) -> JointPattern:
    """Atom pattern conditioned on far-field photon detection at kappa_x."""
    k = config.photon_wavenumber
    amp = slit_amplitude(grid.positions, "both", FarField(kappa_x), config, rule_order)
    pattern = AtomPattern(grid, np.abs(amp) ** 2, f"farfield kappa={kappa_x:g}")
    return JointPattern(kappa_x, pattern, scattering_weight(kappa_x, k))


def imaging_partial_pattern(x_gamma: float, config: ApparatusConfig, grid: DetectorGrid,
                            rule_order: int = 16) -> JointPattern:
    """Atom pattern conditioned on imaging-plane detection at x_gamma.

    joint_scale integrates the probability kernel |h|^2 over the full
    aperture mask (both slits, finite width).
    """
    lam = config.photon_wavelength
    amp = slit_amplitude(grid.positions, "both", ImagePoint(x_gamma), config, rule_order)
    pattern = AtomPattern(grid, np.abs(amp) ** 2, f"imaging x_gamma={x_gamma:g}")
    rate = 2.0 * config.photon_wavenumber
    scale = 0.0
    for lo, hi in _slit_intervals(config).values():
        f = Integrand1D(lambda xp: np.abs(imaging_kernel(x_gamma, xp, lam)) ** 2,
                        phase_rate=rate)
        scale += integrate_complex(f, (lo, hi), rule_order=rule_order).real
    return JointPattern(x_gamma, pattern, scale)


def decohered_pattern(config: ApparatusConfig, grid: DetectorGrid,
                      rule_order: int = 16, samples: int | None = None) -> AtomPattern:
    """Recoil-averaged pattern: the no-detector marginal over photon angles.

    Normalized by the plain weight integral, so it equals
    (|psi_L|^2 + |psi_R|^2)/2 + Re[psi_L psi_R* Gamma] pointwise.
    """
    d = config.slit_separation
    k = config.photon_wavenumber
    x = grid.positions
    psi_l = _bare_slit_integral(x, "L", config, rule_order)
    psi_r = _bare_slit_integral(x, "R", config, rule_order)

    def per_recoil(kappa):
        amp = _compose(psi_l, psi_r,
                       np.exp(-0.5j * kappa * d), np.exp(0.5j * kappa * d))
        return np.abs(amp) ** 2

    total = integrate_weighted_recoil(per_recoil, k, samples=samples, phase_rate=d)
    norm = recoil_weight_norm(k, samples=samples, phase_rate=d)
    return AtomPattern(grid, total.real / norm, "decohered")


# --- fringe diagnostics ----------------------------------------------------

def _refine_extremum(y0, y1, y2):
    """Parabolic estimate of the extremum value through three samples."""
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return y1
    return y1 - (y0 - y2) ** 2 / (8.0 * denom)


def _local_extrema(vals):
    maxima, minima = [], []
    for i in range(1, len(vals) - 1):
        y0, y1, y2 = vals[i - 1], vals[i], vals[i + 1]
        if y1 >= y0 and y1 >= y2 and (y1 > y0 or y1 > y2):
            maxima.append(_refine_extremum(y0, y1, y2))
        elif y1 <= y0 and y1 <= y2 and (y1 < y0 or y1 < y2):
            minima.append(max(_refine_extremum(y0, y1, y2), 0.0))
    return maxima, minima


def visibility(pattern: AtomPattern, window) -> float:
    """Fringe contrast (max - min)/(max + min) over local extrema in window.

    Falls back to the raw window range when no interior extrema exist (a
    smooth envelope has visibility ~ 0 at the fringe scale).
    """
    lo, hi = window
    x = pattern.grid.positions
    sel = (x >= lo) & (x <= hi)
    vals = pattern.values[sel]
    if vals.size < 5:
        raise WindowTooNarrow(f"window [{lo}, {hi}] holds only {vals.size} samples")
    maxima, minima = _local_extrema(vals)
    vmax = max(maxima) if maxima else float(vals.max())
    vmin = min(minima) if minima else float(vals.min())
    if vmax + vmin <= 0.0:
        return 0.0
    return (vmax - vmin) / (vmax + vmin)


def central_window(config: ApparatusConfig, periods: float = 4.0):
    half = 0.5 * periods * config.fringe_period
    return (-half, half)


def fringe_phase_shift(pattern: AtomPattern, reference: AtomPattern,
                       config: ApparatusConfig, window_fringes: float = 5.0) -> float:
    """Fringe phase of ``pattern`` relative to ``reference``, in (-pi, pi].

    Cross-correlates the two patterns over a +-window_fringes window around
    x = 0 and converts the (parabolically refined) peak displacement to an
    interferometer phase via phase = -p0 d shift / L.  Only the phase modulo
    2*pi is recoverable.
    """
    if pattern.grid.positions.shape != reference.grid.positions.shape or \
            not np.array_equal(pattern.grid.positions, reference.grid.positions):
        raise ValueError("patterns must share a grid")
    x = pattern.grid.positions
    h = pattern.grid.spacing
    period = config.fringe_period
    spp = int(round(period / h))
    if spp < 4:
        raise WindowTooNarrow("grid resolves fewer than 4 samples per fringe")
    half_w = window_fringes * period
    win = np.nonzero((x >= -half_w) & (x <= half_w))[0]
    if win.size == 0 or win[0] - spp - 1 < 0 or win[-1] + spp + 1 >= x.size:
        raise WindowTooNarrow("window plus one fringe period exceeds the grid")

    ref = reference.values[win] - reference.values[win].mean()
    shifts = np.arange(-spp, spp + 1)
    corr = np.array([
        np.dot(pattern.values[win + s] - pattern.values[win + s].mean(), ref)
        for s in shifts
    ])
    i = int(np.argmax(corr))
    if 0 < i < corr.size - 1:
        y0, y1, y2 = corr[i - 1], corr[i], corr[i + 1]
        denom = y0 - 2.0 * y1 + y2
        frac = 0.5 * (y0 - y2) / denom if denom != 0.0 else 0.0
    else:
        frac = 0.0
    shift = (shifts[i] + frac) * h
    phase = -config.atom_momentum * config.slit_separation * shift / config.screen_distance
    return wrap_phase(phase)


def wrap_phase(phi: float) -> float:
    """Map an angle to (-pi, pi]."""
    out = math.remainder(phi, 2.0 * math.pi)
    if out <= -math.pi:
        out += 2.0 * math.pi
    return out


def fringe_count(pattern: AtomPattern, config: ApparatusConfig) -> int:
    """Number of fringe maxima inside the central single-slit envelope."""
    half = config.envelope_halfwidth
    x = pattern.grid.positions
    sel = np.abs(x) <= half
    vals = pattern.values[sel]
    interior = (vals[1:-1] > vals[:-2]) & (vals[1:-1] >= vals[2:])
    return int(np.count_nonzero(interior))


def l1_distance(p: AtomPattern, q: AtomPattern) -> float:
    """Total-variation distance between unit-normalized patterns, in [0, 1].

    0.5 * int |p - q| dx after normalizing each to unit integral over the
    common grid span; directly readable as a fraction of probability mass.
    """
    if not np.array_equal(p.grid.positions, q.grid.positions):
        raise ValueError("patterns must share a grid")
    pn = p.normalized().values
    qn = q.normalized().values
    return 0.5 * float(np.trapezoid(np.abs(pn - qn), p.grid.positions))
