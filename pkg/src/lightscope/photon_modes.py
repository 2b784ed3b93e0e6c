"""Photon-basis amplitudes and the decoherence-controlling overlap.

Three detection bases are supported: photons tagged by their slit of
origin, far-field (definite recoil) detection, and an idealized imaging
(microscope) configuration.  The overlap Gamma = <gamma_R|gamma_L> between
the two origin states is what controls fringe survival.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .quadrature import (
    Integrand1D, integrate_complex, integrate_weighted_recoil,
    recoil_weight_norm, scattering_weight_raw,
)

TWO_PI = 2.0 * math.pi


class DomainError(ValueError):
    """Argument outside its physical domain."""


class OverlapOutOfRange(ValueError):
    """|Gamma| exceeded 1 beyond numerical tolerance."""


@dataclass(frozen=True)
class SlitOrigin:
    side: str  # 'L' or 'R'

    def __post_init__(self):
        if self.side not in ("L", "R"):
            raise DomainError(f"side must be 'L' or 'R', got {self.side!r}")


@dataclass(frozen=True)
class FarField:
    kappa_x: float  # recoil wavenumber, in [0, 2k]


@dataclass(frozen=True)
class ImagePoint:
    x_gamma: float  # image-plane coordinate, units of d

    def __post_init__(self):
        if not math.isfinite(self.x_gamma):
            raise DomainError("x_gamma must be finite")


PhotonMode = Union[SlitOrigin, FarField, ImagePoint]


@dataclass(frozen=True)
class OverlapAmplitude:
    """Gamma = <gamma_R|gamma_L> for a given wavelength-to-separation ratio."""

    value: complex
    lambda_over_d: float

    def __post_init__(self):
        if abs(self.value) > 1.0 + 1e-12:
            raise OverlapOutOfRange(f"|Gamma| = {abs(self.value)} > 1")

    @property
    def magnitude(self) -> float:
        return abs(self.value)


def scattering_weight(kappa_x: float, k: float) -> float:
    """Angular weight for recoil kappa_x; symmetric about kappa_x = k."""
    if not 0.0 <= kappa_x <= 2.0 * k:
        raise DomainError(f"kappa_x = {kappa_x} outside [0, {2 * k}]")
    return float(scattering_weight_raw(kappa_x, k))


def farfield_phase(x_prime, kappa_x):
    """Projection phase exp(i * kappa_x * x') of a far-field photon mode.

    The common scattering amplitude S(k_f) is factored out; modulus is
    exactly 1.
    """
    return np.exp(1j * np.asarray(kappa_x, dtype=float) * np.asarray(x_prime, dtype=float))


def imaging_kernel(x_gamma, x_prime, lam: float):
    """Amplitude point-spread of an ideal unit-magnification lens.

    h(u) = sin(k u)/(k u) with k = 2*pi/lam, h(0) = 1.  Image inversion is
    absorbed into the x_gamma = x relabeling, so the kernel peaks where the
    image point sits over the source.
    """
    k = TWO_PI / lam
    u = np.asarray(x_gamma, dtype=float) - np.asarray(x_prime, dtype=float)
    return np.sinc(k * u / math.pi)


def slit_overlap(lam: float, d: float = 1.0, samples: int | None = None) -> OverlapAmplitude:
    """Overlap Gamma = <gamma_R|gamma_L> in the far-field recoil basis.

    Gamma = int_0^{2k} W(kappa) e^{-i kappa d} dkappa / int_0^{2k} W dkappa,
    normalized so Gamma -> 1 exactly as d -> 0.
    """
    if lam <= 0:
        raise DomainError("lam must be positive")
    k = TWO_PI / lam
    num = integrate_weighted_recoil(lambda kap: np.exp(-1j * kap * d), k,
                                    samples=samples, phase_rate=d)
    den = recoil_weight_norm(k, samples=samples, phase_rate=d)
    value = complex(num) / den
    # Guard against quadrature overshoot right at |Gamma| = 1.
    if 1.0 < abs(value) <= 1.0 + 1e-12:
        value /= abs(value)
    return OverlapAmplitude(value=value, lambda_over_d=lam / d)


def imaging_basis_overlap(lam: float, d: float = 1.0, half_span: float | None = None) -> float:
    """Gamma recomputed from the imaging kernel:

    int h(u - d/2) h(u + d/2) du / int h(u)^2 du over the image plane.
    Used as a cross-basis consistency check; the idealized kernel makes this
    agree with the far-field value only approximately.
    """
    k = TWO_PI / lam
    if half_span is None:
        # sinc tails decay like 1/u; this leaves ~1e-3 relative truncation.
        half_span = 500.0 * math.pi / k + 2.0 * d
    rate = 2.0 * k

    cross = Integrand1D(
        lambda u: imaging_kernel(u, -0.5 * d, lam) * imaging_kernel(u, 0.5 * d, lam),
        phase_rate=rate)
    norm = Integrand1D(lambda u: imaging_kernel(u, 0.0, lam) ** 2, phase_rate=rate)
    num = integrate_complex(cross, (-half_span, half_span)).real
    den = integrate_complex(norm, (-half_span, half_span)).real
    return num / den
