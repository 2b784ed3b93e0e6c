"""Near-field two-slit atom interference with photon scattering.

Computes atom probability patterns with and without scattered photons,
photon-conditioned partial patterns in the far-field and imaging bases,
the slit-photon overlap that controls decoherence, reduced density
matrices, and semiclassical phase bookkeeping.  All lengths are in units
of the slit separation d, with hbar = 1.
"""

__version__ = "0.1.0"

from .apparatus import (
    ApparatusConfig, ConfigError, DetectorGrid, RegimeViolation,
    default_grid, grid_from_span, load_config, parse_config_text, validate,
)
from .entanglement import (
    DensityMatrix, branch_distinguishability, joint_density, purity,
    reduce_to_atom, two_photon_cross_amplitude, which_path_posterior,
)
from .patterns import (
    AtomPattern, JointPattern, WindowTooNarrow, central_window,
    decohered_pattern, farfield_partial_pattern, fringe_count,
    fringe_phase_shift, fresnel_phase, imaging_partial_pattern, l1_distance,
    no_photon_patterns, slit_amplitude, visibility, wrap_phase,
)
from .photon_modes import (
    DomainError, FarField, ImagePoint, OverlapAmplitude, OverlapOutOfRange,
    PhotonMode, SlitOrigin, farfield_phase, imaging_basis_overlap,
    imaging_kernel, scattering_weight, slit_overlap,
)
from .quadrature import (
    Integrand1D, NonFiniteIntegrand, integrate_complex,
    integrate_weighted_recoil, recoil_nodes, recoil_weight_norm,
)
from .semiclassical import (
    PhaseReport, deflection, longitudinal_smearing, phase_carry_check,
    phase_no_recoil, phase_report, phase_with_recoil, sloppy_argument_demo,
    smearing_negligible,
)
