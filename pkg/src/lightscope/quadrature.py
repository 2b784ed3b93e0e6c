"""Complex quadrature for oscillatory integrands.

Two entry points: a composite Gauss-Legendre rule over an arbitrary interval
whose panel count is driven by the caller's declared phase rate, and a
weighted integral over the photon recoil wavenumber with the azimuthally
integrated scattering weight built in.  Both are deterministic pure
functions of their inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

# Target phase advance per quadrature panel (radians).
PHASE_PER_PANEL = math.pi / 4.0
DEFAULT_ORDER = 16


class NonFiniteIntegrand(ValueError):
    """Integrand returned NaN or infinity."""


@dataclass(frozen=True)
class Integrand1D:
    """Callable integrand plus its declared maximum local phase rate.

    ``func`` maps a source coordinate to a complex amplitude; it may return
    a scalar or an ndarray (one value per detector point).  ``phase_rate``
    must bound |dPhi/dx'| over the integration interval (rad per unit
    length); it only controls the panel count, not correctness of smooth
    integrands.
    """

    func: Callable
    phase_rate: float = 0.0


@lru_cache(maxsize=32)
def _leggauss(order: int):
    return np.polynomial.legendre.leggauss(order)


def panel_count(phase_rate: float, length: float, minimum: int = 1) -> int:
    return max(minimum, int(math.ceil(abs(phase_rate) * length / PHASE_PER_PANEL)))


def integrate_complex(f: Integrand1D, interval, rule_order: int = DEFAULT_ORDER):
    """Composite Gauss-Legendre integral of ``f`` over ``interval``.

    Panels are sized so each spans at most pi/4 radians of the declared
    phase.  Raises NonFiniteIntegrand on non-finite integrand values.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if rule_order < 2:
        raise ValueError("rule_order must be >= 2")
    panels = panel_count(f.phase_rate, hi - lo)
    nodes, weights = _leggauss(rule_order)
    h = (hi - lo) / panels
    acc = 0.0 + 0.0j
    for p in range(panels):
        a = lo + p * h
        mid, half = a + 0.5 * h, 0.5 * h
        for xi, wi in zip(nodes, weights):
            val = f.func(mid + half * xi)
            if not np.all(np.isfinite(val)):
                raise NonFiniteIntegrand(f"integrand non-finite at x'={mid + half * xi}")
            acc = acc + (wi * half) * np.asarray(val, dtype=complex)
    return acc


def scattering_weight_raw(kappa_x, k: float):
    """Azimuthally integrated angular weight 2k^2 + kappa^2 - 2k*kappa."""
    kap = np.asarray(kappa_x, dtype=float)
    return 2.0 * k * k + kap * kap - 2.0 * k * kap


def recoil_nodes(k: float, samples: int | None = None, phase_rate: float = 1.0,
                 rule_order: int = DEFAULT_ORDER):
    """Gauss-Legendre nodes and weights on [0, 2k] used by the recoil integral.

    Exposed so callers can reconstruct weighted averages over the exact same
    node set.  ``phase_rate`` bounds |d(arg g)/d kappa| of the integrand;
    ``samples`` forces at least that many nodes.
    """
    panels = panel_count(phase_rate, 2.0 * k, minimum=4)
    if samples is not None:
        panels = max(panels, int(math.ceil(samples / rule_order)))
    nodes, weights = _leggauss(rule_order)
    h = 2.0 * k / panels
    mids = (np.arange(panels) + 0.5) * h
    kappas = (mids[:, None] + 0.5 * h * nodes[None, :]).ravel()
    wts = np.broadcast_to(0.5 * h * weights[None, :], (panels, nodes.size)).ravel()
    return kappas, wts


def integrate_weighted_recoil(g, k: float, samples: int | None = None,
                              phase_rate: float = 1.0,
                              rule_order: int = DEFAULT_ORDER):
    """Integral of W(kappa) * g(kappa) over kappa in [0, 2k].

    W is the azimuthal scattering weight; ``g`` maps kappa to a complex
    amplitude (scalar or ndarray).  Deterministic for fixed inputs.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    kappas, wts = recoil_nodes(k, samples=samples, phase_rate=phase_rate,
                               rule_order=rule_order)
    acc = 0.0 + 0.0j
    for kap, w in zip(kappas, wts):
        val = g(kap)
        if not np.all(np.isfinite(val)):
            raise NonFiniteIntegrand(f"recoil integrand non-finite at kappa={kap}")
        acc = acc + (w * scattering_weight_raw(kap, k)) * np.asarray(val, dtype=complex)
    return acc


def recoil_weight_norm(k: float, **kwargs):
    """Plain weight integral (g = 1); equals 8k^3/3 analytically."""
    return integrate_weighted_recoil(lambda kap: 1.0, k, **kwargs).real
