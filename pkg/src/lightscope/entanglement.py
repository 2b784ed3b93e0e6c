"""Joint atom-photon density matrices and branching diagnostics.

The joint state (|L>|gamma_L> + |R>|gamma_R>)/sqrt(2) is expressed in an
orthonormal photon basis built by Gram-Schmidt from the two non-orthogonal
scattered-photon states; tracing out the photon leaves the 2x2 atom matrix
whose off-diagonals carry the observable coherence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .apparatus import ApparatusConfig
from .photon_modes import OverlapAmplitude, OverlapOutOfRange, imaging_kernel
from .quadrature import Integrand1D, integrate_complex

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_TOL = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """Small Hermitian, unit-trace, positive-semidefinite matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
            raise ValueError(f"expected a 2x2 or 4x4 matrix, got {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise ValueError("matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
            raise ValueError(f"trace = {np.trace(m)} != 1")
        if np.min(np.linalg.eigvalsh(m)) < -EIGENVALUE_TOL:
            raise ValueError("matrix has a significantly negative eigenvalue")

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


def _as_overlap_value(gamma) -> complex:
    if isinstance(gamma, OverlapAmplitude):
        return complex(gamma.value)
    g = complex(gamma)
    if abs(g) > 1.0 + 1e-12:
        raise OverlapOutOfRange(f"|Gamma| = {abs(g)} > 1")
    return g


def joint_density(gamma, seed_side: str = "L") -> DensityMatrix:
    """4x4 pure-state density matrix of the entangled atom-photon pair.

    Photon basis: Gram-Schmidt on {|gamma_L>, |gamma_R>}, seeded from
    ``seed_side``; ordering is L(x)e1, L(x)e2, R(x)e1, R(x)e2.  The partial
    trace is independent of the seeding, which the tests exercise.
    """
    g = _as_overlap_value(gamma)
    beta = math.sqrt(max(0.0, 1.0 - abs(g) ** 2))
    # Coefficient of the joint ket in the (atom, photon) product basis.
    c = np.zeros(4, dtype=complex)
    if seed_side == "L":
        # gamma_L = e1; gamma_R = Gamma e1 + beta e2.
        c[0] = 1.0 / math.sqrt(2.0)
        c[2] = g / math.sqrt(2.0)
        c[3] = beta / math.sqrt(2.0)
    elif seed_side == "R":
        # gamma_R = e1; gamma_L = conj(Gamma) e1 + beta e2.
        c[2] = 1.0 / math.sqrt(2.0)
        c[0] = np.conj(g) / math.sqrt(2.0)
        c[1] = beta / math.sqrt(2.0)
    else:
        raise ValueError("seed_side must be 'L' or 'R'")
    return DensityMatrix(np.outer(c, c.conj()))


def reduce_to_atom(rho_joint: DensityMatrix) -> DensityMatrix:
    """Partial trace over the photon factor of a 4x4 joint matrix."""
    m = rho_joint.matrix
    if m.shape != (4, 4):
        raise ValueError("reduce_to_atom expects a 4x4 joint matrix")
    atom = np.empty((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            atom[i, j] = m[2 * i, 2 * j] + m[2 * i + 1, 2 * j + 1]
    return DensityMatrix(atom)


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2); 1 for pure states, 1/dim for the maximally mixed state."""
    return float(np.trace(rho.matrix @ rho.matrix).real)


def two_photon_cross_amplitude(gamma) -> complex:
    """Amplitude to see one photon from each slit after two scatterings.

    <L, gamma_R, gamma_L | chi_2> = Gamma / sqrt(2); vanishes as the photon
    states become distinguishable.
    """
    return _as_overlap_value(gamma) / math.sqrt(2.0)


def which_path_posterior(x_gamma: float, lam: float, config: ApparatusConfig) -> dict:
    """Born-rule slit posterior from one imaging-plane photon detection.

    Integrates the probability kernel |h|^2 over each finite-width slit, so
    it stays well defined even when lam is not much larger than the slit
    width.
    """
    d, a = config.slit_separation, config.slit_width
    rate = 2.0 * 2.0 * math.pi / lam
    weights = {}
    for side, center in (("L", -0.5 * d), ("R", 0.5 * d)):
        f = Integrand1D(lambda xp: np.abs(imaging_kernel(x_gamma, xp, lam)) ** 2,
                        phase_rate=rate)
        weights[side] = integrate_complex(
            f, (center - 0.5 * a, center + 0.5 * a)).real
    total = weights["L"] + weights["R"]
    return {"p_L": weights["L"] / total, "p_R": weights["R"] / total}


def branch_distinguishability(n_photons: int, gamma) -> float:
    """1 - |Gamma|^n: how distinguishable the L/R branches have become
    after n scattered photons."""
    if n_photons < 0:
        raise ValueError("n_photons must be >= 0")
    return 1.0 - abs(_as_overlap_value(gamma)) ** n_photons
