"""Geometry, unit conventions, and detector grids.

All lengths are expressed in units of the slit separation d, with hbar = 1.
The atom's longitudinal momentum is p0 = 2*pi / atom_de_broglie and the
photon wavenumber is k = 2*pi / photon_wavelength.  Everything downstream
depends only on the ratios a/d, L/d, lambda/d and lambda_dB/d, so rescaling
all lengths together is a no-op.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

TWO_PI = 2.0 * math.pi

# Default de Broglie wavelength (units of d).  Chosen so the single-slit
# envelope halfwidth lambda_dB * L / a sits just under d: the two single-slit
# humps are clearly separated, roughly 2d/a ~ 200 fringes span the central
# envelope, the coherent pattern still peaks at x = 0, and the right-slit
# pattern leaves under a tenth of its mass at x < 0.
DEFAULT_ATOM_DE_BROGLIE = 1.0 / 1080.0

# Grid-coverage cap (units of d) and sampling rule.
MAX_HALF_SPAN = 6.0
SAMPLES_PER_FRINGE = 20


class ConfigError(ValueError):
    """Bad configuration input (unknown key, unparsable value, bad grid)."""


class RegimeViolation(ConfigError):
    """One or more of the regime inequalities failed.

    Carries (name, lhs, rhs) triples for every violated constraint, where
    the constraint is lhs >= rhs.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        msgs = [f"{name}: {lhs:g} < {rhs:g}" for name, lhs, rhs in self.violations]
        super().__init__("regime violation: " + "; ".join(msgs))


@dataclass(frozen=True)
class ApparatusConfig:
    """Physical configuration, all lengths in units of the slit separation."""

    slit_width: float = 0.01
    screen_distance: float = 10.0
    photon_wavelength: float = 0.1
    atom_de_broglie: float = DEFAULT_ATOM_DE_BROGLIE
    slit_separation: float = 1.0

    @property
    def atom_momentum(self) -> float:
        return TWO_PI / self.atom_de_broglie

    @property
    def photon_wavenumber(self) -> float:
        return TWO_PI / self.photon_wavelength

    @property
    def fringe_period(self) -> float:
        """Two-slit fringe spacing at the detector plane."""
        return self.atom_de_broglie * self.screen_distance / self.slit_separation

    @property
    def envelope_halfwidth(self) -> float:
        """First zero of the single-slit diffraction envelope."""
        return self.atom_de_broglie * self.screen_distance / self.slit_width


def validate(config: ApparatusConfig, allow_regime_override: bool = False) -> ApparatusConfig:
    """Check positivity and the regime assumptions; never clamps.

    The point-source (lambda >> a) and high-momentum (lambda >> lambda_dB)
    checks can be downgraded with ``allow_regime_override`` for exploration;
    positivity failures are always fatal.
    """
    hard = []
    for name in ("slit_width", "screen_distance", "photon_wavelength",
                 "atom_de_broglie", "slit_separation"):
        val = getattr(config, name)
        if not (val > 0 and math.isfinite(val)):
            hard.append((f"{name} > 0", val, 0.0))
    if hard:
        raise RegimeViolation(hard)

    soft = []
    if config.photon_wavelength < 10.0 * config.slit_width:
        soft.append(("point-source: photon_wavelength >= 10*slit_width",
                     config.photon_wavelength, 10.0 * config.slit_width))
    if config.photon_wavelength < 10.0 * config.atom_de_broglie:
        soft.append(("high-momentum: photon_wavelength >= 10*atom_de_broglie",
                     config.photon_wavelength, 10.0 * config.atom_de_broglie))
    if soft and not allow_regime_override:
        raise RegimeViolation(soft)
    return config


@dataclass(frozen=True)
class DetectorGrid:
    """Uniform atom-detector positions, symmetric about x = 0."""

    positions: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        object.__setattr__(self, "positions", pos)
        if pos.ndim != 1 or pos.size < 1:
            raise ConfigError("grid must be a nonempty 1D array")
        if pos.size > 1:
            steps = np.diff(pos)
            if not np.all(steps > 0):
                raise ConfigError("grid positions must be strictly increasing")
            if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
                raise ConfigError("grid spacing must be uniform")
            if not np.allclose(pos + pos[::-1], 0.0, atol=1e-9 * steps[0]):
                raise ConfigError("grid must be symmetric about 0")
        elif abs(pos[0]) > 1e-12:
            raise ConfigError("single-point grid must sit at x = 0")

    @property
    def spacing(self) -> float:
        return float(self.positions[1] - self.positions[0]) if self.positions.size > 1 else 0.0

    @property
    def span(self):
        return float(self.positions[0]), float(self.positions[-1])

    def __len__(self):
        return self.positions.size


def default_grid(config: ApparatusConfig, fringes_per_side: int | None = None) -> DetectorGrid:
    """Grid covering +-min(6d, requested span) at >= 20 samples per fringe.

    ``fringes_per_side=None`` requests the full capped span;
    ``fringes_per_side=0`` degenerates to the single point x = 0.
    """
    if fringes_per_side is not None and fringes_per_side < 0:
        raise ConfigError("fringes_per_side must be >= 0")
    if fringes_per_side == 0:
        return DetectorGrid(np.array([0.0]))
    period = config.fringe_period
    cap = MAX_HALF_SPAN * config.slit_separation
    half = cap if fringes_per_side is None else min(cap, fringes_per_side * period)
    spacing = period / SAMPLES_PER_FRINGE
    n = int(math.ceil(half / spacing - 1e-9))
    return DetectorGrid(np.arange(-n, n + 1) * spacing)


def grid_from_span(config: ApparatusConfig, half_span: float, points: int) -> DetectorGrid:
    """Explicit symmetric grid; rejects spacing coarser than period/20."""
    if points < 1 or half_span < 0:
        raise ConfigError("grid_span and grid_points must be positive")
    if points == 1:
        return DetectorGrid(np.array([0.0]))
    spacing = 2.0 * half_span / (points - 1)
    if spacing > config.fringe_period / SAMPLES_PER_FRINGE * (1 + 1e-9):
        raise ConfigError(
            f"grid spacing {spacing:g} exceeds fringe_period/20 = "
            f"{config.fringe_period / SAMPLES_PER_FRINGE:g}")
    return DetectorGrid(np.linspace(-half_span, half_span, points))


_CONFIG_KEYS = {
    "slit_width", "screen_distance", "photon_wavelength", "atom_de_broglie",
    "grid_span", "grid_points",
}


def parse_config_text(text: str):
    """Parse ``key = value`` lines; returns (ApparatusConfig, grid options).

    Lengths are in units of d.  Unknown keys are errors.  '#' starts a
    comment; blank lines are ignored.
    """
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            raw[key] = float(value.strip())
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}") from exc

    grid_opts = {}
    if "grid_span" in raw:
        grid_opts["half_span"] = raw.pop("grid_span")
    if "grid_points" in raw:
        grid_opts["points"] = int(raw.pop("grid_points"))
    return ApparatusConfig(**raw), grid_opts


def load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())
