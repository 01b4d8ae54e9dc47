"""Command-line interface.

Every capability is a subcommand emitting CSV or JSON; identical invocations
(including rng seeds) produce byte-identical output, so sweep files can be
kept under golden-file regression.  Floats are printed with 12 significant
digits.  Exit codes: 0 success, 2 usage, 3 validation, 4 non-convergence.

An optional plain-text config file (``key=value`` per line, ``#`` comments)
supplies defaults for any long flag of the subcommand; flags given on the
command line override it.  Relative output paths resolve under
$ACRING_OUTPUT_DIR when that variable is set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import units
from .reduction import (
    RingParams,
    TrapSetup,
    build_ring_params,
    radial_term_diagnostic,
    transverse_kinetic_offset,
)
from .ring import ground_winding, mu_total
from .solver import (
    ConvergenceError,
    SolverSettings,
    dump_wavefunction,
    global_ground,
    relax,
)
from .sweeps import StaircaseSpec, eta_grid, hysteresis, landscape, staircase

__all__ = ["RunConfig", "run", "main"]

ENV_OUTPUT_DIR = "ACRING_OUTPUT_DIR"

STAIRCASE_HEADER = ["eta", "winding_T0", "classical_mean", "thermal_mean", "mu_eff", "degenerate"]


@dataclass(frozen=True)
class RunConfig:
    """One validated invocation: subcommand, its parameters, and the sink."""

    subcommand: str
    parameters: dict
    output_path: str
    output_format: str


@dataclass
class CommandResult:
    header: list
    rows: list
    extras: dict = field(default_factory=dict)
    convergence_failures: list = field(default_factory=list)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _render_csv(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _render_json(config: RunConfig, result: CommandResult) -> str:
    payload = {
        "command": config.subcommand,
        "parameters": config.parameters,
        "columns": result.header,
        "rows": [dict(zip(result.header, row)) for row in result.rows],
    }
    payload.update(result.extras)
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _resolve_path(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(ENV_OUTPUT_DIR)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _write_text(output_path: str, text: str) -> None:
    if output_path == "-":
        sys.stdout.write(text)
        return
    dest = _resolve_path(output_path)
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_text(text, encoding="utf-8", newline="")  # byte-exact across platforms


def _parse_range(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected start:stop:step")
    return tuple(float(p) for p in parts)


def _parse_values(text: str) -> list:
    """Scalar, comma list, or start:stop:step range -> list of floats."""
    if ":" in text:
        start, stop, step = _parse_range(text)
        return eta_grid(start, stop, step)
    if "," in text:
        return [float(p) for p in text.split(",") if p.strip()]
    return [float(text)]


def _interaction(p: dict) -> float:
    if p.get("u_tilde") is not None:
        return p["u_tilde"]
    return p["u_tilde_over_2pi"] * 2.0 * math.pi


_SOLVER_KEYS = {
    "grid_size": "grid_size",
    "tau_step": "tau_step",
    "solver_tolerance": "tolerance",
    "max_iterations": "max_iterations",
    "noise_amplitude": "noise_amplitude",
    "rng_seed": "rng_seed",
}


def _build_settings(p: dict, default_noise: float, seed_winding: int = 0) -> SolverSettings:
    kwargs = {target: p[src] for src, target in _SOLVER_KEYS.items() if p.get(src) is not None}
    kwargs.setdefault("noise_amplitude", default_noise)
    kwargs["seed_winding"] = seed_winding
    return SolverSettings(**kwargs)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _run_estimate(p: dict) -> CommandResult:
    geometry = p["geometry"]
    g = p["g_f"]
    if geometry == "line":
        if (p["n_e"] is None) == (p["eta_target"] is None):
            raise ValueError("line geometry takes exactly one of --n-e / --eta-target")
        density = p["n_e"] if p["n_e"] is not None else units.required_line_density(p["eta_target"], g)
        setup = units.LineChargeSetup(density, g, p["distance"])
        eta = units.eta_line_charge(setup)
        f_au = units.field_line_charge(setup)
        header = ["geometry", "lande_g", "n_e_per_m", "probe_distance_m", "eta", "field_au", "field_v_per_cm"]
        row = ["line", g, density, p["distance"], eta, f_au, units.field_au_to_volts_per_cm(f_au)]
    elif geometry == "torus":
        if (p["sphere_charges"] is None) == (p["eta_target"] is None):
            raise ValueError("torus geometry takes exactly one of --sphere-charges / --eta-target")
        charges = (
            p["sphere_charges"]
            if p["sphere_charges"] is not None
            else units.required_torus_charges(p["eta_target"], g, p["radius"])
        )
        setup = units.TorusChargeSetup(charges, p["radius"], g)
        eta = units.eta_torus(setup)
        f_au = units.field_torus(setup)
        header = ["geometry", "lande_g", "sphere_charges", "torus_radius_m", "eta", "field_au", "field_v_per_cm"]
        row = ["torus", g, charges, p["radius"], eta, f_au, units.field_au_to_volts_per_cm(f_au)]
    else:
        missing = [k for k in ("polarizability", "charges_per_bohr", "b_field") if p[k] is None]
        if missing:
            raise ValueError(f"crossed geometry requires --{missing[0].replace('_', '-')}")
        setup = units.CrossedFieldSetup(p["polarizability"], p["charges_per_bohr"], p["b_field"])
        header = ["geometry", "polarizability_a0cubed", "charges_per_bohr", "b_gauss", "eta"]
        row = ["crossed", p["polarizability"], p["charges_per_bohr"], p["b_field"], units.eta_cross_field(setup)]
    return CommandResult(header=header, rows=[row])


def _run_reduce(p: dict) -> CommandResult:
    trap = TrapSetup(
        atom_count=p["atoms"],
        scattering_length=p["scattering_length"],
        atom_mass=p["mass"],
        torus_radius=p["radius"],
        width_rho=p["width_rho"],
        width_z=p["width_z"],
        potential_mean=p["potential_mean"],
    )
    params = build_ring_params(trap, p["eta"])
    header = [
        "eta",
        "u_tilde",
        "mu_offset",
        "transverse_kinetic_offset",
        "radial_term_diagnostic",
        "energy_unit_joules",
    ]
    row = [
        params.eta,
        params.u_tilde,
        params.mu_offset,
        transverse_kinetic_offset(trap),
        radial_term_diagnostic(trap),
        trap.energy_unit,
    ]
    return CommandResult(header=header, rows=[row])


def _run_ground(p: dict) -> CommandResult:
    params = RingParams(eta=p["eta"], u_tilde=_interaction(p), mu_offset=p["mu_offset"])
    result = ground_winding(params)
    header = ["eta", "u_tilde", "winding", "degenerate", "mu_eff", "mu_total"]
    row = [
        params.eta,
        params.u_tilde,
        result.winding,
        result.degenerate,
        result.mu_eff,
        mu_total(result.mu_eff, params),
    ]
    return CommandResult(header=header, rows=[row])


def _run_solve(p: dict) -> CommandResult:
    params = RingParams(eta=p["eta"], u_tilde=_interaction(p), mu_offset=p["mu_offset"])
    failures = []
    if p["global_search"]:
        settings = _build_settings(p, default_noise=1e-3)
        try:
            report = global_ground(params, settings)
        except ConvergenceError as err:
            report = err.best_report
            failures.append(str(err))
        search = "global"
    else:
        settings = _build_settings(p, default_noise=0.0, seed_winding=p["seed_winding"])
        report = relax(params, settings)
        if not report.converged:
            failures.append(
                f"relax did not converge within {settings.max_iterations} iterations (eta={params.eta})"
            )
        search = "seeded"
    if p["dump_psi"] is not None:
        dump_path = _resolve_path(p["dump_psi"])
        dump_path.parent.mkdir(parents=True, exist_ok=True)
        dump_wavefunction(report.wavefunction, dump_path)
    header = [
        "eta",
        "u_tilde",
        "search",
        "winding",
        "mu",
        "energy_per_particle",
        "mu_total",
        "iterations",
        "converged",
    ]
    row = [
        params.eta,
        params.u_tilde,
        search,
        report.winding,
        report.mu,
        report.energy_per_particle,
        mu_total(report.mu, params),
        report.iterations,
        report.converged,
    ]
    return CommandResult(header=header, rows=[row], convergence_failures=failures)


def _run_staircase(p: dict) -> CommandResult:
    start, stop, step = p["eta"]
    spec = StaircaseSpec(
        eta_start=start,
        eta_stop=stop,
        eta_step=step,
        u_tilde=_interaction(p),
        mode=p["mode"],
        condensate_weight=p["weight"],
    )
    settings = _build_settings(p, default_noise=1e-3) if spec.mode == "numeric" else None
    records = staircase(spec, settings)
    rows = [
        [r.eta, r.winding_T0, r.classical_mean, r.thermal_mean, r.mu_eff, r.degenerate]
        for r in records
    ]
    failures = [f"eta={r.eta}" for r in records if not r.converged]
    extras = {"unconverged_etas": [r.eta for r in records if not r.converged]} if failures else {}
    return CommandResult(
        header=list(STAIRCASE_HEADER), rows=rows, extras=extras, convergence_failures=failures
    )


def _run_landscape(p: dict) -> CommandResult:
    result = landscape(p["m"], p["eta"], _interaction(p), p["x_step"])
    rows = [[pt.eta, pt.x, pt.mu_eff] for pt in result.points]
    peak_header = ["eta", "x_peak", "mu_peak", "height_from_m", "height_from_m_plus_1"]
    peak_rows = [
        [pk.eta, pk.x_peak, pk.mu_peak, pk.height_from_m, pk.height_from_m_plus_1]
        for pk in result.peaks
    ]
    if p["peaks_output"] is not None:
        _write_text(p["peaks_output"], _render_csv(peak_header, peak_rows))
    extras = {"peaks": [dict(zip(peak_header, row)) for row in peak_rows]}
    return CommandResult(header=["eta", "x", "mu_eff"], rows=rows, extras=extras)


def _run_hysteresis(p: dict) -> CommandResult:
    path = list(p["eta"])
    if p["loop"] and len(path) > 1:
        path = path + path[-2::-1]
    records = hysteresis(path, _interaction(p), p["start_winding"])
    rows = [[r.eta, r.direction, r.winding, r.barrier_height] for r in records]
    return CommandResult(header=["eta", "direction", "winding", "barrier_height"], rows=rows)


_HANDLERS = {
    "estimate": _run_estimate,
    "reduce": _run_reduce,
    "ground": _run_ground,
    "solve": _run_solve,
    "staircase": _run_staircase,
    "landscape": _run_landscape,
    "hysteresis": _run_hysteresis,
}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_output_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument(
        "--output",
        "-o",
        default="-",
        help="output file, or '-' for stdout; relative paths resolve under $ACRING_OUTPUT_DIR",
    )
    sp.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    sp.add_argument(
        "--config",
        default=None,
        help="key=value file with flag defaults; explicit flags override it",
    )


def _add_interaction_flags(sp: argparse.ArgumentParser) -> None:
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--u-tilde", type=float, default=None, help="interaction strength in ring units")
    group.add_argument(
        "--u-tilde-over-2pi",
        type=float,
        default=None,
        help="interaction given as the chemical-potential plateau u_tilde/(2*pi)",
    )


def _add_solver_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--grid-size", type=int, default=None, help="grid points, power of two >= 64 (default 256)")
    sp.add_argument("--tau-step", type=float, default=None, help="imaginary-time step (default 1e-3)")
    sp.add_argument(
        "--solver-tolerance",
        type=float,
        default=None,
        help="per-step relative mu change at convergence (default 1e-10)",
    )
    sp.add_argument("--max-iterations", type=int, default=None, help="iteration cap (default 50000)")
    sp.add_argument(
        "--noise-amplitude",
        type=float,
        default=None,
        help="seed noise amplitude (default 0 seeded, 1e-3 for global search / numeric sweeps)",
    )
    sp.add_argument("--rng-seed", type=int, default=None, help="noise generator seed (default 7)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acring",
        description="Quantized circulating ring states under a topological gauge phase",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    est = sub.add_parser("estimate", help="physical-parameter estimates for the gauge phase")
    est.add_argument("--geometry", required=True, choices=("line", "torus", "crossed"))
    est.add_argument("--n-e", type=float, default=None, help="line charge density, charges per meter")
    est.add_argument("--eta-target", type=float, default=None, help="solve for the charge giving this eta")
    est.add_argument("--g-f", type=float, default=1.0, help="Lande g_F factor (nonzero)")
    est.add_argument("--distance", type=float, default=1e-3, help="probe distance from the line, meters")
    est.add_argument("--sphere-charges", type=float, default=None, help="charges on the central sphere")
    est.add_argument("--radius", type=float, default=1e-3, help="torus major radius, meters")
    est.add_argument("--polarizability", type=float, default=None, help="static polarizability, a0^3 units")
    est.add_argument("--charges-per-bohr", type=float, default=None, help="line charges per Bohr radius")
    est.add_argument("--b-field", type=float, default=None, help="magnetic field, gauss")
    _add_output_flags(est)

    red = sub.add_parser("reduce", help="map a 3D trapped cloud to the 1D ring parameters")
    red.add_argument("--atoms", type=float, required=True, help="condensed atom number")
    red.add_argument("--scattering-length", type=float, required=True, help="s-wave length, meters")
    red.add_argument("--mass", type=float, required=True, help="atom mass, kg")
    red.add_argument("--radius", type=float, required=True, help="torus major radius, meters")
    red.add_argument("--width-rho", type=float, required=True, help="radial width (std dev), meters")
    red.add_argument("--width-z", type=float, required=True, help="axial width (std dev), meters")
    red.add_argument("--potential-mean", type=float, default=0.0, help="transverse-averaged potential, joules")
    red.add_argument("--eta", type=float, default=0.0, help="gauge phase to fold into the offset")
    _add_output_flags(red)

    grd = sub.add_parser("ground", help="analytic ground winding and chemical potential")
    grd.add_argument("--eta", type=float, required=True, help="gauge phase")
    _add_interaction_flags(grd)
    grd.add_argument("--mu-offset", type=float, default=0.0, help="winding-independent offset")
    _add_output_flags(grd)

    slv = sub.add_parser("solve", help="imaginary-time ground state on the azimuthal grid")
    slv.add_argument("--eta", type=float, required=True, help="gauge phase")
    _add_interaction_flags(slv)
    slv.add_argument("--mu-offset", type=float, default=0.0, help="winding-independent offset")
    slv.add_argument(
        "--global",
        dest="global_search",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="search seed windings around the expected ground instead of one sector",
    )
    slv.add_argument("--seed-winding", type=int, default=0, help="initial winding (seeded mode)")
    slv.add_argument("--dump-psi", default=None, help="write converged (phi, Re psi, Im psi) here")
    _add_solver_flags(slv)
    _add_output_flags(slv)

    stc = sub.add_parser("staircase", help="winding vs eta sweep with thermal average")
    stc.add_argument("--eta", type=_parse_range, required=True, metavar="START:STOP:STEP")
    _add_interaction_flags(stc)
    stc.add_argument("--weight", type=float, default=1.0, help="condensate weight w in [0, 1]")
    stc.add_argument("--mode", choices=("analytic", "numeric"), default="analytic")
    _add_solver_flags(stc)
    _add_output_flags(stc)

    lnd = sub.add_parser("landscape", help="two-mode stability landscape mu(x) per eta")
    lnd.add_argument("--m", type=int, default=0, help="lower winding of the pair (m, m+1)")
    lnd.add_argument(
        "--eta", type=_parse_values, required=True, metavar="VALUES", help="scalar, comma list, or range"
    )
    _add_interaction_flags(lnd)
    lnd.add_argument("--x-step", type=float, default=0.01, help="mixing-parameter grid step")
    lnd.add_argument("--peaks-output", default=None, help="also write the barrier peaks as CSV here")
    _add_output_flags(lnd)

    hys = sub.add_parser("hysteresis", help="winding walk along an eta path with metastability")
    hys.add_argument(
        "--eta", type=_parse_values, required=True, metavar="VALUES", help="scalar, comma list, or range"
    )
    _add_interaction_flags(hys)
    hys.add_argument(
        "--loop",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="append the reversed path (sweep up, then back down)",
    )
    hys.add_argument("--start-winding", type=int, default=0, help="winding carried into the first point")
    _add_output_flags(hys)

    return parser


# ---------------------------------------------------------------------------
# config file and entry point
# ---------------------------------------------------------------------------


def _load_config_flags(path: str) -> list:
    """Turn key=value lines into flags; booleans map to --key / --no-key."""
    flags = []
    text = Path(path).read_text(encoding="utf-8")
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("_", "-")
        value = value.strip()
        if not sep or not key:
            raise ValueError(f"bad config line: {raw!r}")
        if value.lower() == "true":
            flags.append(f"--{key}")
        elif value.lower() == "false":
            flags.append(f"--no-{key}")
        else:
            flags.extend([f"--{key}", value])
    return flags


def _inject_config(argv: list) -> list:
    if not argv or argv[0].startswith("-"):
        return argv
    cfg = None
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            cfg = argv[i + 1]
        elif token.startswith("--config="):
            cfg = token.split("=", 1)[1]
    if cfg is None:
        return argv
    return [argv[0]] + _load_config_flags(cfg) + argv[1:]


def run(config: RunConfig) -> int:
    """Dispatch one validated invocation; returns the process exit code."""
    try:
        result = _HANDLERS[config.subcommand](config.parameters)
    except ValueError as err:
        print(f"error: validation: {err}", file=sys.stderr)
        return 3
    except ConvergenceError as err:
        print(f"error: convergence: {err}", file=sys.stderr)
        return 4
    if config.output_format == "json":
        text = _render_json(config, result)
    else:
        text = _render_csv(result.header, result.rows)
    try:
        _write_text(config.output_path, text)
    except OSError as err:
        print(f"error: io: {err}", file=sys.stderr)
        return 3
    if result.convergence_failures:
        print(
            f"error: convergence: {len(result.convergence_failures)} point(s) unconverged: "
            + "; ".join(result.convergence_failures),
            file=sys.stderr,
        )
        return 4
    return 0


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _inject_config(argv)
    except (OSError, ValueError) as err:
        print(f"error: validation: {err}", file=sys.stderr)
        return 3
    parser = build_parser()
    args = parser.parse_args(argv)
    reserved = {"subcommand", "output", "format", "config"}
    parameters = {k: v for k, v in vars(args).items() if k not in reserved}
    config = RunConfig(
        subcommand=args.subcommand,
        parameters=parameters,
        output_path=args.output,
        output_format=args.format,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
