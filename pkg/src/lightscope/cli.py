"""Command-line front end: figure-style CSV outputs, sweeps and reports.

Every command reads a plain-text config, writes CSVs (12+ significant
digits, LF line endings, units named in the header) plus a JSON run
manifest, and optionally a minimal SVG line plot.  Exit codes: 0 success,
1 numerical failure, 2 usage/config error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .apparatus import (
    ApparatusConfig, ConfigError, default_grid, grid_from_span, load_config,
    validate,
)
from .entanglement import (
    branch_distinguishability, joint_density, purity, reduce_to_atom,
    two_photon_cross_amplitude, which_path_posterior,
)
from .patterns import (
    central_window, decohered_pattern, farfield_partial_pattern,
    imaging_partial_pattern, no_photon_patterns, visibility,
)
from .photon_modes import DomainError, slit_overlap
from .quadrature import NonFiniteIntegrand
from .semiclassical import phase_report
from .svg import write_svg

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2

FMT = "%.12e"


def _fmt(value) -> str:
    return FMT % float(value)


def write_csv(path: Path, header: list[str], columns) -> None:
    rows = zip(*columns)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _resolve(args):
    config, grid_opts = load_config(args.config)
    if args.photon_wavelength is not None:
        config = dataclasses.replace(config, photon_wavelength=args.photon_wavelength)
    validate(config, allow_regime_override=args.override_regime)
    if args.grid_points is not None:
        grid_opts["points"] = args.grid_points
        grid_opts.setdefault("half_span", 6.0 * config.slit_separation)
    if grid_opts:
        if "points" not in grid_opts:
            raise ConfigError("grid_span requires grid_points")
        grid = grid_from_span(config, grid_opts.get("half_span", 6.0), grid_opts["points"])
    else:
        grid = default_grid(config)
    return config, grid


def _write_manifest(out_dir: Path, command: str, config: ApparatusConfig, grid,
                    outputs: list[str], started: float, extra=None) -> None:
    manifest = {
        "command": command,
        "tool_version": __version__,
        "config": dataclasses.asdict(config),
        "grid": {"points": len(grid), "span": list(grid.span), "spacing": grid.spacing},
        "quadrature": {"rule_order": 16, "phase_per_panel": "pi/4"},
        "outputs": sorted(outputs),
        "wall_time_s": round(time.monotonic() - started, 3),
    }
    if extra:
        manifest.update(extra)
    with open(out_dir / "manifest.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _normalized_columns(grid, patterns_dict):
    cols = {name: pat.normalized().values for name, pat in patterns_dict.items()}
    return cols


def cmd_pattern(args) -> int:
    started = time.monotonic()
    config, grid = _resolve(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    pats = no_photon_patterns(config, grid)
    cols = _normalized_columns(grid, pats)
    header = ["x (units of d)", "single_L", "single_R", "coherent", "incoherent"]
    series = [grid.positions, cols["single_L"], cols["single_R"],
              cols["coherent"], cols["incoherent"]]
    write_csv(out / "pattern.csv", header, series)

    zoom_half = 3.0 * config.fringe_period
    sel = np.abs(grid.positions) <= zoom_half
    write_csv(out / "pattern_zoom.csv", header, [s[sel] for s in series])
    outputs = ["pattern.csv", "pattern_zoom.csv"]

    if args.svg:
        write_svg(out / "pattern.svg", grid.positions,
                  {k: cols[k] for k in ("single_L", "single_R", "coherent", "incoherent")},
                  title="atom probability at the detector plane")
        outputs.append("pattern.svg")
    _write_manifest(out, "pattern", config, grid, outputs, started)
    return EXIT_OK


def _default_kappas(config):
    k = config.photon_wavenumber
    return [0.0, 0.5 * k, k, 1.5 * k, 2.0 * k]


def cmd_farfield(args) -> int:
    started = time.monotonic()
    config, grid = _resolve(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    kappas = args.kappa if args.kappa else _default_kappas(config)

    outputs = []
    for i, kappa in enumerate(kappas):
        jp = farfield_partial_pattern(kappa, config, grid)
        name = f"farfield_{i:02d}.csv"
        write_csv(out / name,
                  [f"x (units of d); kappa_x={kappa!r} (1/d); joint_scale={jp.joint_scale!r}",
                   "probability"],
                  [grid.positions, jp.atom_pattern.normalized().values])
        outputs.append(name)

    avg = decohered_pattern(config, grid)
    write_csv(out / "farfield_average.csv",
              ["x (units of d)", "probability"],
              [grid.positions, avg.normalized().values])
    outputs.append("farfield_average.csv")

    if args.svg:
        series = {"average": avg.normalized().values}
        write_svg(out / "farfield.svg", grid.positions, series,
                  title="recoil-averaged atom probability")
        outputs.append("farfield.svg")
    _write_manifest(out, "farfield", config, grid, outputs, started,
                    extra={"kappa_x": list(map(float, kappas))})
    return EXIT_OK


def cmd_imaging(args) -> int:
    started = time.monotonic()
    config, grid = _resolve(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    d = config.slit_separation
    xgammas = args.xgamma if args.xgamma else [0.0, 0.5 * d]

    outputs = []
    for i, xg in enumerate(xgammas):
        jp = imaging_partial_pattern(xg, config, grid)
        name = f"imaging_{i:02d}.csv"
        write_csv(out / name,
                  [f"x (units of d); x_gamma={xg!r} (units of d)",
                   "probability", "joint_scale"],
                  [grid.positions, jp.atom_pattern.normalized().values,
                   np.full(len(grid), jp.joint_scale)])
        outputs.append(name)
    _write_manifest(out, "imaging", config, grid, outputs, started,
                    extra={"x_gamma": list(map(float, xgammas))})
    return EXIT_OK


def cmd_overlap_sweep(args) -> int:
    started = time.monotonic()
    config, grid = _resolve(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    lambdas = args.lambdas if args.lambdas else list(np.geomspace(0.1, 100.0, 25))
    if any(lam <= 0 for lam in lambdas):
        raise ConfigError("lambda grid must be positive")

    d = config.slit_separation
    rows = {"lambda_over_d": [], "re_gamma": [], "im_gamma": [], "abs_gamma": [],
            "purity": [], "visibility_prediction": []}
    for lam in lambdas:
        gamma = slit_overlap(lam * d, d)
        rows["lambda_over_d"].append(lam)
        rows["re_gamma"].append(gamma.value.real)
        rows["im_gamma"].append(gamma.value.imag)
        rows["abs_gamma"].append(gamma.magnitude)
        rows["purity"].append(purity(reduce_to_atom(joint_density(gamma))))
        rows["visibility_prediction"].append(gamma.magnitude)
    write_csv(out / "overlap_sweep.csv",
              ["lambda/d", "Re Gamma", "Im Gamma", "|Gamma|", "purity",
               "visibility prediction |Gamma|"],
              [rows[k] for k in ("lambda_over_d", "re_gamma", "im_gamma",
                                 "abs_gamma", "purity", "visibility_prediction")])
    _write_manifest(out, "overlap-sweep", config, grid, ["overlap_sweep.csv"], started)
    return EXIT_OK


def _matrix_lines(label, matrix):
    lines = [label]
    for row in matrix:
        lines.append("  " + "  ".join(f"{v.real:+.6f}{v.imag:+.6f}j" for v in row))
    return lines


def cmd_density(args) -> int:
    started = time.monotonic()
    config, grid = _resolve(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    gamma = slit_overlap(config.photon_wavelength, config.slit_separation)
    rho_joint = joint_density(gamma)
    rho_atom = reduce_to_atom(rho_joint)

    write_csv(out / "density_atom.csv",
              ["row", "col", "re", "im"],
              [[i for i in range(2) for _ in range(2)],
               [j for _ in range(2) for j in range(2)],
               [rho_atom.matrix[i, j].real for i in range(2) for j in range(2)],
               [rho_atom.matrix[i, j].imag for i in range(2) for j in range(2)]])
    write_csv(out / "density_joint.csv",
              ["row", "col", "re", "im"],
              [[i for i in range(4) for _ in range(4)],
               [j for _ in range(4) for j in range(4)],
               [rho_joint.matrix[i, j].real for i in range(4) for j in range(4)],
               [rho_joint.matrix[i, j].imag for i in range(4) for j in range(4)]])

    lines = [f"lambda/d = {gamma.lambda_over_d:g}",
             f"Gamma = {gamma.value.real:+.9f}{gamma.value.imag:+.9f}j "
             f"(|Gamma| = {gamma.magnitude:.9f})"]
    lines += _matrix_lines("joint density matrix (L e1, L e2, R e1, R e2):",
                           rho_joint.matrix)
    lines += _matrix_lines("reduced atom density matrix (L, R):", rho_atom.matrix)
    lines.append(f"atom purity = {purity(rho_atom):.12f}")
    lines.append(f"two-photon cross amplitude = "
                 f"{abs(two_photon_cross_amplitude(gamma)):.9f}")
    (out / "density.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    _write_manifest(out, "density", config, grid,
                    ["density_atom.csv", "density_joint.csv", "density.txt"], started)
    return EXIT_OK


def cmd_branch(args) -> int:
    started = time.monotonic()
    config, grid = _resolve(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    gamma = slit_overlap(config.photon_wavelength, config.slit_separation)
    ns = list(range(0, 9))
    write_csv(out / "branch.csv",
              ["n photons", "distinguishability 1-|Gamma|^n"],
              [ns, [branch_distinguishability(n, gamma) for n in ns]])

    d = config.slit_separation
    xgs = [0.0, 0.25 * d, 0.5 * d]
    posteriors = [which_path_posterior(xg, config.photon_wavelength, config)
                  for xg in xgs]
    write_csv(out / "posterior.csv",
              ["x_gamma (units of d)", "p_L", "p_R"],
              [xgs, [p["p_L"] for p in posteriors], [p["p_R"] for p in posteriors]])
    _write_manifest(out, "branch", config, grid, ["branch.csv", "posterior.csv"], started)
    return EXIT_OK


def cmd_semiclassical(args) -> int:
    started = time.monotonic()
    config, grid = _resolve(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    k = config.photon_wavenumber
    xs = np.linspace(-2.0, 2.0, 9) * config.slit_separation
    kappas = np.linspace(0.0, 2.0 * k, 5)
    reports = [phase_report(float(x), float(kap), config) for x in xs for kap in kappas]
    write_csv(out / "semiclassical.csv",
              ["x (units of d)", "kappa_x (1/d)", "phase_no_recoil (rad)",
               "phase_with_recoil (rad)", "deflection (units of d)",
               "carry_residual (rad)", "naive_phase (rad)"],
              [[r.x for r in reports], [r.kappa_x for r in reports],
               [r.phase_no_recoil for r in reports],
               [r.phase_with_recoil for r in reports],
               [r.deflection for r in reports],
               [r.carry_residual for r in reports],
               [r.naive_phase for r in reports]])
    _write_manifest(out, "semiclassical", config, grid, ["semiclassical.csv"], started)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lightscope",
        description="Two-slit atom interference with photon scattering: "
                    "patterns, partial patterns, overlap sweeps and reports.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="plain-text config file")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--lambda", dest="photon_wavelength", type=float, default=None,
                       help="override photon wavelength (units of d)")
        p.add_argument("--grid-points", type=int, default=None)
        p.add_argument("--svg", action="store_true", help="also write SVG plots")
        p.add_argument("--override-regime", action="store_true",
                       help="downgrade regime checks to allow exploration")

    p = sub.add_parser("pattern", help="no-photon single/double-slit patterns")
    common(p)
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("farfield", help="far-field photon-conditioned patterns")
    common(p)
    p.add_argument("--kappa", action="append", type=float, default=None,
                   help="recoil wavenumber (repeatable; default 0..2k in 5 steps)")
    p.set_defaults(func=cmd_farfield)

    p = sub.add_parser("imaging", help="imaging photon-conditioned patterns")
    common(p)
    p.add_argument("--xgamma", action="append", type=float, default=None,
                   help="image-plane detection point (repeatable; default 0, d/2)")
    p.set_defaults(func=cmd_imaging)

    p = sub.add_parser("overlap-sweep", help="Gamma versus lambda/d")
    common(p)
    p.add_argument("--lambda-grid", dest="lambdas", action="append", type=float,
                   default=None, help="lambda/d value (repeatable)")
    p.set_defaults(func=cmd_overlap_sweep)

    p = sub.add_parser("density", help="joint and reduced density matrices")
    common(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("branch", help="branch distinguishability and posteriors")
    common(p)
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("semiclassical", help="narrow-slit phase report")
    common(p)
    p.set_defaults(func=cmd_semiclassical)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, DomainError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonFiniteIntegrand, ArithmeticError, ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
