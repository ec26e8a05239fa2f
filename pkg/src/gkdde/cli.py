"""Command-line front end: ``gkdde {coeffs,assemble,simulate,field}``.

Exit codes: 0 success, 2 invalid configuration, 3 solution blow-up.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import fixtures
from .derivative_coeffs import solve_coeffs
from .integrators import (
    BlowUpError,
    Trajectory,
    compare,
    delay_steps,
    integrate_dde_reference,
    integrate_reduced,
)
from .koornwinder import DEFAULT_MAX_DEGREE, DEFAULT_QUAD_ORDER, gauss_legendre
from .models import DEFAULT_TAU, SuarezSchopfParams, builtin_registry, get_model
from .reduction import HistorySegment, assemble_matrix, load_spec, project_history

EXIT_OK, EXIT_CONFIG, EXIT_BLOWUP = 0, 2, 3


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _fmt(digits: int):
    spec = f".{digits}g"
    return lambda v: format(float(v), spec)


def _csv(rows, header=None, digits=17) -> str:
    fmt = _fmt(digits)
    out = io.StringIO()
    if header:
        out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(fmt(v) for v in np.atleast_1d(row)) + "\n")
    return out.getvalue()


def _write(text: str, path: Path | None):
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


# --- validation ----------------------------------------------------------

def _positive(name, value):
    if value is None or not math.isfinite(value) or value <= 0:
        raise ConfigError(f"--{name} must be a positive number, got {value}")
    return value


def _quad_order() -> int:
    raw = os.environ.get("GK_QUAD_ORDER")
    if raw is None:
        return DEFAULT_QUAD_ORDER
    try:
        order = int(raw)
    except ValueError:
        raise ConfigError(f"GK_QUAD_ORDER must be an integer, got {raw!r}") from None
    if order < 1:
        raise ConfigError(f"GK_QUAD_ORDER must be >= 1, got {order}")
    return order


def _dimension(N):
    if N is None or not 1 <= N <= DEFAULT_MAX_DEGREE + 1:
        raise ConfigError(f"--N must be an integer in [1, {DEFAULT_MAX_DEGREE + 1}], got {N}")
    return N


def _load_model(args):
    tau_given = args.tau is not None
    if tau_given:
        _positive("tau", args.tau)
    try:
        if args.model_file:
            spec = load_spec(args.model_file, tau=args.tau)
        else:
            spec = get_model(args.model, alpha=args.alpha, a=args.a, b=args.b, c=args.c, tau=args.tau)
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot load model: {exc}") from None
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return spec, tau_given or bool(args.model_file)


def _history(args) -> HistorySegment:
    if args.history_poly is not None:
        try:
            coeffs = [float(c) for c in args.history_poly.split(",")]
        except ValueError:
            raise ConfigError(f"--history-poly must be comma-separated numbers, got {args.history_poly!r}") from None
        if not all(math.isfinite(c) for c in coeffs):
            raise ConfigError("--history-poly coefficients must be finite")
        return HistorySegment.polynomial(coeffs)
    if not math.isfinite(args.history_constant):
        raise ConfigError("--history-constant must be finite")
    return HistorySegment.constant(args.history_constant)


def _check_grid(args, spec, need_reference: bool):
    _positive("h", args.h)
    _positive("t-end", args.t_end)
    n = round(args.t_end / args.h)
    if n < 1 or abs(n * args.h - args.t_end) > 1e-9 * max(1.0, args.t_end):
        raise ConfigError(f"--t-end {args.t_end} is not a whole number of steps --h {args.h}")
    if need_reference:
        try:
            delay_steps(spec.tau, args.h)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None


def _output_transform(args, spec):
    """Map perturbed-variable output to the original variable when requested."""
    if args.variable == "perturbed":
        return lambda x: x
    if spec.name != "suarez-schopf":
        raise ConfigError("--variable original is only defined for the suarez-schopf model")
    params = SuarezSchopfParams(-spec.b, spec.tau)
    return lambda x: x + params.t_plus


def _dims(raw: str):
    try:
        dims = sorted({int(v) for v in raw.split(",")})
    except ValueError:
        raise ConfigError(f"--sweep must be comma-separated integers, got {raw!r}") from None
    for N in dims:
        _dimension(N)
    return dims


# --- commands -------------------------------------------------------------

def cmd_coeffs(args) -> int:
    if args.n is None or not 1 <= args.n <= DEFAULT_MAX_DEGREE:
        raise ConfigError(f"--n must be an integer in [1, {DEFAULT_MAX_DEGREE}], got {args.n}")
    text = _csv((solve_coeffs(n) for n in range(1, args.n + 1)), digits=args.digits)
    _write(text, Path(args.out) if args.out else None)
    return EXIT_OK


def cmd_assemble(args) -> int:
    N = _dimension(args.N)
    spec, tau_given = _load_model(args)
    if args.fixture and N != 6:
        raise ConfigError("--fixture suarez-schopf-6d requires --N 6")
    system = assemble_matrix(spec, N)
    digits = args.digits
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, arr in (("A", system.A), ("P", system.P), ("Q", system.Q)):
            (out / f"{name}.csv").write_text(_csv(arr, digits=digits))
        (out / "nu.csv").write_text(_csv(system.nu[:, None], digits=digits))
    else:
        sys.stdout.write(_csv(system.A, digits=digits))
    if args.fixture:
        report = {
            "fixture": args.fixture,
            "max_abs_dev_M1": float(np.max(np.abs(system.Q - fixtures.M1))),
            "max_abs_dev_M2": float(np.max(np.abs(2.0 * system.P - fixtures.M2))),
            "tolerance": fixtures.TOLERANCE,
        }
        report["pass"] = max(report["max_abs_dev_M1"], report["max_abs_dev_M2"]) <= fixtures.TOLERANCE
        print(json.dumps(report), file=sys.stdout if args.out else sys.stderr)
    if not tau_given:
        print(f"note: tau = {spec.tau:g} is the demo default", file=sys.stderr)
    return EXIT_OK


def _reduced_rows(traj: Trajectory, transform):
    x = transform(traj.x)
    return np.column_stack([traj.times, x, traj.states])


def _dump_trajectory(path: Path, traj: Trajectory, transform, fmt: str, digits: int):
    if traj.kind == "reduced":
        header = ["t", "x_N"] + [f"y_{j}" for j in range(traj.states.shape[1])]
        rows = _reduced_rows(traj, transform)
    else:
        header = ["t", "x"]
        rows = np.column_stack([traj.times, transform(traj.x)])
    if fmt == "json":
        f = _fmt(digits)
        payload = {name: [float(f(v)) for v in rows[:, i]] for i, name in enumerate(header)}
        path.with_suffix(".json").write_text(json.dumps(payload) + "\n")
    else:
        path.with_suffix(".csv").write_text(_csv(rows, header, digits))


def _simulate_one(spec, phi, N, args, rule) -> Trajectory:
    system = assemble_matrix(spec, N)
    y0 = project_history(phi, N, spec.tau, rule)
    return integrate_reduced(system, y0, args.t_end, args.h)


def cmd_simulate(args) -> int:
    spec, tau_given = _load_model(args)
    if not tau_given:
        raise ConfigError("--tau is required for simulate")
    phi = _history(args)
    engines = {"reduced": ("reduced",), "reference": ("reference",), "both": ("reduced", "reference")}[args.engine]
    dims = _dims(args.sweep) if args.sweep else None
    if dims is not None:
        engines = ("reduced", "reference")
    else:
        if "reduced" in engines:
            _dimension(args.N)
    _check_grid(args, spec, "reference" in engines)
    transform = _output_transform(args, spec)
    rule = gauss_legendre(_quad_order())
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    meta = {"model": spec.name, "a": spec.a, "b": spec.b, "c": spec.c, "tau": spec.tau,
            "h": args.h, "t_end": args.t_end, "variable": args.variable}
    try:
        reference = None
        if "reference" in engines:
            reference = integrate_dde_reference(spec, phi, args.t_end, args.h)
            _dump_trajectory(out / "reference", reference, transform, args.format, args.digits)
        if dims is not None:
            reports = {}
            for N in dims:
                traj = _simulate_one(spec, phi, N, args, rule)
                reports[str(N)] = compare(traj, reference).as_dict()
            (out / "sweep.json").write_text(json.dumps({**meta, "errors": reports}, indent=2) + "\n")
            return EXIT_OK
        if "reduced" in engines:
            reduced = _simulate_one(spec, phi, args.N, args, rule)
            _dump_trajectory(out / "reduced", reduced, transform, args.format, args.digits)
            if reference is not None:
                report = {**meta, "N": args.N, **compare(reduced, reference).as_dict()}
                (out / "report.json").write_text(json.dumps(report, indent=2) + "\n")
    except BlowUpError as exc:
        name = "reduced" if exc.trajectory.kind == "reduced" else "reference"
        _dump_trajectory(out / name, exc.trajectory, transform, args.format, args.digits)
        print(f"gkdde: blow-up: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    return EXIT_OK


def _theta_grid(args, tau):
    if args.theta is not None:
        try:
            theta = np.array([float(v) for v in args.theta.split(",")])
        except ValueError:
            raise ConfigError(f"--theta must be comma-separated numbers, got {args.theta!r}") from None
    else:
        if args.theta_points < 2:
            raise ConfigError(f"--theta-points must be >= 2, got {args.theta_points}")
        theta = np.linspace(-tau, 0.0, args.theta_points)
    if np.any(theta < -tau * (1 + 1e-12)) or np.any(theta > 0.0):
        raise ConfigError(f"theta values must lie in [-{tau:g}, 0]")
    return theta


def cmd_field(args) -> int:
    spec, tau_given = _load_model(args)
    if not tau_given:
        raise ConfigError("--tau is required for field")
    N = _dimension(args.N)
    phi = _history(args)
    _check_grid(args, spec, need_reference=False)
    theta = _theta_grid(args, spec.tau)
    transform = _output_transform(args, spec)
    rule = gauss_legendre(_quad_order())
    status = EXIT_OK
    try:
        traj = _simulate_one(spec, phi, N, args, rule)
    except BlowUpError as exc:
        traj, status = exc.trajectory, EXIT_BLOWUP
        print(f"gkdde: blow-up: {exc}", file=sys.stderr)
    u = transform(traj.field(theta))
    fmt = _fmt(args.digits)
    lines = ["t,theta,u_N\n"]
    for t, row in zip(traj.times, u):
        ts = fmt(t)
        lines.extend(f"{ts},{fmt(th)},{fmt(v)}\n" for th, v in zip(theta, row))
    _write("".join(lines), Path(args.out) if args.out else None)
    return status


# --- parser ---------------------------------------------------------------

def _add_model_args(p):
    p.add_argument("--model", default="suarez-schopf", choices=sorted(builtin_registry()),
                   help="built-in model name (default: suarez-schopf)")
    p.add_argument("--model-file", help="JSON model file; overrides --model")
    p.add_argument("--alpha", type=float, help="Suarez-Schopf alpha (default 0.75)")
    p.add_argument("--a", type=float, help="linear coefficient a")
    p.add_argument("--b", type=float, help="delayed coefficient b")
    p.add_argument("--c", type=float, help="distributed-delay coefficient c")
    p.add_argument("--tau", type=float, help=f"delay (demo default {DEFAULT_TAU:g} for assemble only)")
    p.add_argument("--digits", type=int, default=17, help="significant digits in output (default 17)")


def _add_run_args(p):
    p.add_argument("--N", type=int, help="Galerkin dimension")
    hist = p.add_mutually_exclusive_group()
    hist.add_argument("--history-constant", type=float, default=0.0, help="constant history value")
    hist.add_argument("--history-poly", help="history polynomial coefficients c0,c1,... in theta")
    p.add_argument("--h", type=float, required=True, help="time step")
    p.add_argument("--t-end", type=float, required=True, help="final time")
    p.add_argument("--variable", choices=("perturbed", "original"), default="perturbed")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gkdde", description="Galerkin-Koornwinder reduction of scalar DDEs")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeffs", help="print derivative coefficient rows a_1..a_n as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--digits", type=int, default=17)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("assemble", help="write A, P, Q and nu as CSV")
    _add_model_args(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out", help="output directory (default: print A to stdout)")
    p.add_argument("--fixture", choices=("suarez-schopf-6d",))
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("simulate", help="integrate the reduced system and/or the reference DDE")
    _add_model_args(p)
    _add_run_args(p)
    p.add_argument("--engine", choices=("reduced", "reference", "both"), default="both")
    p.add_argument("--sweep", help="comma-separated dimensions, e.g. 4,6,8,10")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("field", help="long-format history field t,theta,u_N")
    _add_model_args(p)
    _add_run_args(p)
    grid = p.add_mutually_exclusive_group()
    grid.add_argument("--theta-points", type=int, default=21)
    grid.add_argument("--theta", help="explicit comma-separated theta values in [-tau, 0]")
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=cmd_field)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "digits", 17) < 1 or args.digits > 17:
            raise ConfigError(f"--digits must be in [1, 17], got {args.digits}")
        return args.func(args)
    except ConfigError as exc:
        print(f"gkdde: error: {str(exc).splitlines()[0]}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
