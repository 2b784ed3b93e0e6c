"""Narrow-slit interferometer phase bookkeeping.

Exact phase formulas in the a -> 0 idealization: the unperturbed fringe
phase, the recoil-shifted phase, the deflection map, the theorem that a
deflected atom carries its pre-recoil phase to its new landing point, a
deliberately naive bookkeeping for contrast, and the longitudinal
transit-time smearing estimate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .apparatus import ApparatusConfig

SMEARING_NEGLIGIBLE = math.pi / 10.0


@dataclass(frozen=True)
class PhaseReport:
    x: float
    kappa_x: float
    phase_no_recoil: float
    phase_with_recoil: float
    deflection: float
    carry_residual: float
    naive_phase: float


def phase_no_recoil(x: float, config: ApparatusConfig) -> float:
    """Unperturbed two-slit phase p0 d x / L."""
    return config.atom_momentum * config.slit_separation * x / config.screen_distance


def phase_with_recoil(x: float, kappa_x: float, config: ApparatusConfig) -> float:
    """Post-recoil phase p0 d x / L - kappa_x d."""
    return phase_no_recoil(x, config) - kappa_x * config.slit_separation


def deflection(kappa_x: float, config: ApparatusConfig) -> float:
    """Transverse landing-point displacement kappa_x L / p0 from recoil."""
    return kappa_x * config.screen_distance / config.atom_momentum


def phase_carry_check(x: float, kappa_x: float, config: ApparatusConfig) -> dict:
    """Deflected atoms keep their pre-recoil phase: Delta_phi(x + dx, k) ==
    Delta_phi0(x), to machine precision."""
    lhs = phase_with_recoil(x + deflection(kappa_x, config), kappa_x, config)
    rhs = phase_no_recoil(x, config)
    return {"lhs": lhs, "rhs": rhs, "residual": abs(lhs - rhs)}


def sloppy_argument_demo(x: float, kappa_x: float, config: ApparatusConfig) -> dict:
    """The tempting-but-wrong substitution p_x -> p_x + kappa_x.

    Naively adding kappa_x d at a fixed detection point just reproduces the
    unperturbed phase-versus-angle relation; the correct accounting moves
    the detection point along with the recoil and recovers the pre-recoil
    phase unchanged.
    """
    return {
        "naive_phase": phase_no_recoil(x, config) + kappa_x * config.slit_separation,
        "correct_phase": phase_no_recoil(x, config),
    }


def longitudinal_smearing(x: float, kappa_z: float, config: ApparatusConfig) -> float:
    """Transit-time phase smearing (x / L) * (kappa_z d)."""
    return (x / config.screen_distance) * kappa_z * config.slit_separation


def smearing_negligible(x: float, kappa_z: float, config: ApparatusConfig) -> bool:
    return abs(longitudinal_smearing(x, kappa_z, config)) < SMEARING_NEGLIGIBLE


def phase_report(x: float, kappa_x: float, config: ApparatusConfig) -> PhaseReport:
    carry = phase_carry_check(x, kappa_x, config)
    return PhaseReport(
        x=x,
        kappa_x=kappa_x,
        phase_no_recoil=phase_no_recoil(x, config),
        phase_with_recoil=phase_with_recoil(x, kappa_x, config),
        deflection=deflection(kappa_x, config),
        carry_residual=carry["residual"],
        naive_phase=sloppy_argument_demo(x, kappa_x, config)["naive_phase"],
    )
