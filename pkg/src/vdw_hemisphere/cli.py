"""
Batch command-line front end.

Commands: energy, landscape, phase, minima, verify.  Grids go to CSV
(comma-separated, '.' decimal, 17 significant digits); scalars and reports
go to JSON with a full config echo, so every output reproduces its run.
Exit codes: 0 success, 2 domain error, 3 config error, 4 verification
failure.  VDW_THREADS caps the worker pool for grid sweeps (0 or unset =
auto); partitioning is index-ordered, so outputs are byte-identical for any
thread count.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .analysis import classify_origin, find_minima_on_axis, landscape, phase_diagram
from .dipole import Orientation, ParticleAnisotropy
from .energy import energy_total, lateral_force
from .errors import ConfigError, DomainError, SingularityError, VdwError
from .geometry import GeometryConfig
from .verification import run_verification

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_CONFIG = 3
EXIT_VERIFY = 4

EPSILON_0 = 8.8541878128e-12  # F/m


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with the config exit code."""

    def error(self, message):
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _angles(args):
    scale = math.pi / 180.0 if args.degrees else 1.0
    return args.theta * scale, args.gamma * scale


def _build_particle(args):
    """Validate physical parameters up front; any violation is a config error."""
    try:
        theta, gamma = _angles(args)
        aniso = ParticleAnisotropy(beta=args.beta)
        orient = Orientation(theta=theta, gamma=gamma)
        geo = GeometryConfig(r_bar=args.rbar)
    except VdwError as exc:
        raise ConfigError(str(exc)) from exc
    return aniso, orient, geo


def _config_echo(args, command):
    skip = {"func"}
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    echo["command"] = command
    return echo


def _dump_json(obj, stream=None):
    text = json.dumps(obj, indent=2, sort_keys=True, allow_nan=False)
    if stream is None:
        sys.stdout.write(text + "\n")
    else:
        stream.write_text(text + "\n")


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, str)) or x is None:
        return x
    return float(x)


def _write_csv(path: Path, header, rows):
    with path.open("w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if not isinstance(v, str) else v
                              for v in row) + "\n")


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def cmd_energy(args) -> int:
    aniso, orient, geo = _build_particle(args)
    if (args.dpsq is None) != (args.z0 is None):
        raise ConfigError("SI output requires both --dpsq and --z0")
    breakdown = energy_total(aniso, orient, (args.x, args.y), geo)
    force = lateral_force(aniso, orient, (args.x, args.y), geo)
    out = {
        "config": _config_echo(args, "energy"),
        "u0": breakdown.u0,
        "u_h": breakdown.u_h,
        "total": breakdown.total,
        "r_rho_rho": breakdown.r_rho_rho,
        "r_phi_phi": breakdown.r_phi_phi,
        "r_zz": breakdown.r_zz,
        "r_rho_z": breakdown.r_rho_z,
        "f_x": force.f_x,
        "f_y": force.f_y,
        "units": "reduced",
    }
    if args.dpsq is not None:
        if args.dpsq <= 0 or args.z0 <= 0:
            raise ConfigError("--dpsq and --z0 must be > 0")
        scale = args.dpsq / (64.0 * math.pi * EPSILON_0 * args.z0 ** 3)
        out["units"] = "si"
        out["energy_scale_joules"] = scale
        out["u0_joules"] = breakdown.u0 * scale
        out["u_h_joules"] = breakdown.u_h * scale
        out["total_joules"] = breakdown.total * scale
    _dump_json(_jsonable(out))
    return EXIT_OK


def cmd_landscape(args) -> int:
    aniso, orient, geo = _build_particle(args)
    grid = landscape(aniso, orient, geo, (args.xmin, args.xmax),
                     (args.ymin, args.ymax), args.nx, args.ny)
    import numpy as np
    xs = np.linspace(args.xmin, args.xmax, args.nx)
    ys = np.linspace(args.ymin, args.ymax, args.ny)
    out = Path(args.output)
    rows = ((xs[i], ys[j], grid.values[i, j])
            for i in range(args.nx) for j in range(args.ny))
    _write_csv(out, ("x0_bar", "y0_bar", "u_h"), rows)
    sidecar = {"config": _config_echo(args, "landscape"),
               "output": str(out),
               "u_h_min": float(grid.values.min()),
               "u_h_max": float(grid.values.max())}
    _dump_json(_jsonable(sidecar), out.with_suffix(".json"))
    return EXIT_OK


def cmd_phase(args) -> int:
    try:
        theta, gamma = _angles(args)
        orient = Orientation(theta=theta, gamma=gamma)
    except VdwError as exc:
        raise ConfigError(str(exc)) from exc
    diagram = phase_diagram(orient, (args.rbar_min, args.rbar_max),
                            (args.beta_min, args.beta_max),
                            n_beta=args.nbeta, n_rbar=args.nrbar)
    out = Path(args.output)
    rows = ((diagram.betas[i], diagram.r_bars[j],
             diagram.curvatures_xx[i, j], diagram.grid[i, j])
            for i in range(args.nbeta) for j in range(args.nrbar))
    _write_csv(out, ("beta", "r_bar", "curvature_xx", "kind"), rows)
    boundary_path = out.with_name(out.stem + "_boundary.csv")
    _write_csv(boundary_path, ("beta", "r_bar"), diagram.boundary)
    sidecar = {"config": _config_echo(args, "phase"),
               "output": str(out),
               "boundary_output": str(boundary_path),
               "beta_critical": diagram.beta_critical,
               "boundary_points": len(diagram.boundary)}
    _dump_json(_jsonable(sidecar), out.with_suffix(".json"))
    return EXIT_OK


def cmd_minima(args) -> int:
    aniso, orient, geo = _build_particle(args)
    minima = find_minima_on_axis(aniso, orient, geo, (args.xmin, args.xmax),
                                 n_scan=args.n_scan)
    origin = classify_origin(aniso, orient, geo) if geo.r_bar < 1.0 else None
    if args.format == "csv":
        lines = ["x0_bar,u_h"] + [f"{_fmt(x)},{_fmt(u)}" for x, u in minima]
        text = "\n".join(lines) + "\n"
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    out = {"config": _config_echo(args, "minima"),
           "minima": [{"x0_bar": x, "u_h": u} for x, u in minima]}
    if origin is not None:
        out["origin"] = {"kind": origin.kind,
                         "curvature_xx": origin.curvature_xx,
                         "curvature_yy": origin.curvature_yy}
    _dump_json(_jsonable(out), Path(args.output) if args.output else None)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise ConfigError("--samples must be >= 1")
    if args.surface_samples < 2:
        raise ConfigError("--surface-samples must be >= 2")
    report = run_verification(seed=args.seed, samples=args.samples,
                              surface_samples=args.surface_samples,
                              perturb_green=args.perturb_green)
    report["config"] = _config_echo(args, "verify")
    _dump_json(_jsonable(report))
    return EXIT_OK if report["passed"] else EXIT_VERIFY


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def _add_particle_args(p):
    p.add_argument("--beta", type=float, required=True,
                   help="anisotropy ratio in (0, 1]; 1 = isotropic")
    p.add_argument("--theta", type=float, required=True,
                   help="polar angle of the symmetry axis")
    p.add_argument("--gamma", type=float, required=True,
                   help="lab azimuth of the symmetry axis")
    p.add_argument("--rbar", type=float, required=True,
                   help="hemisphere radius over particle height, R/z0")
    p.add_argument("--degrees", action="store_true",
                   help="interpret theta and gamma in degrees")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vdw-hemisphere",
                     description="van der Waals energy and lateral force above "
                                 "a conducting plane with a hemispherical boss")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", parents=[], help="single-point energy breakdown (JSON)")
    _add_particle_args(p)
    p.add_argument("--x", type=float, required=True, help="x0/z0")
    p.add_argument("--y", type=float, required=True, help="y0/z0")
    p.add_argument("--dpsq", type=float, default=None,
                   help="<d_p^2> in C^2 m^2 for SI output (with --z0)")
    p.add_argument("--z0", type=float, default=None,
                   help="particle height in meters for SI output (with --dpsq)")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("landscape", help="u_h on a lateral grid (CSV + JSON sidecar)")
    _add_particle_args(p)
    p.add_argument("--xmin", type=float, default=-2.0)
    p.add_argument("--xmax", type=float, default=2.0)
    p.add_argument("--ymin", type=float, default=-2.0)
    p.add_argument("--ymax", type=float, default=2.0)
    p.add_argument("--nx", type=int, default=201)
    p.add_argument("--ny", type=int, default=201)
    p.add_argument("--output", "-o", default="landscape.csv")
    p.set_defaults(func=cmd_landscape)

    p = sub.add_parser("phase", help="origin min/max phase diagram over (beta, r_bar)")
    p.add_argument("--theta", type=float, default=math.pi / 2.0)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--degrees", action="store_true")
    p.add_argument("--beta-min", type=float, default=0.02)
    p.add_argument("--beta-max", type=float, default=1.0)
    p.add_argument("--rbar-min", type=float, default=0.02)
    p.add_argument("--rbar-max", type=float, default=0.95)
    p.add_argument("--nbeta", type=int, default=120)
    p.add_argument("--nrbar", type=int, default=120)
    p.add_argument("--output", "-o", default="phase.csv")
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("minima", help="local minima of u_h along the x-axis")
    _add_particle_args(p)
    p.add_argument("--xmin", type=float, default=-3.0)
    p.add_argument("--xmax", type=float, default=3.0)
    p.add_argument("--n-scan", type=int, default=2001)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_minima)

    p = sub.add_parser("verify", help="randomized self-verification report (JSON)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200,
                   help="randomized configurations for the oracle cross-check")
    p.add_argument("--surface-samples", type=int, default=1200,
                   help="conductor-surface points per radius for the boundary check")
    p.add_argument("--perturb-green", type=float, default=0.0,
                   help=argparse.SUPPRESS)  # fault injection, test use only
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage or help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, SingularityError) as exc:
        print(f"error: domain: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except VdwError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entry_point():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
