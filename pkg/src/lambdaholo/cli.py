"""Command-line front end.

Exit codes: 0 success, 1 parse/validation error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import checks
from .errors import GridTooCoarse, LambdaHoloError, NotCyclic
from .holonomy import chi_of, compose_two, geometric_audit, offres_gate
from .linalg import gate_distance, project_to_qubit
from .model import LaserParams, PulseEnvelope, angles_from_axis
from .propagator import (
    DEFAULT_STEPS,
    DEFAULT_TOL,
    TimeGrid,
    cyclic_period,
    propagate_numeric,
    square_envelope,
    subspace_return_error,
)
from .schedule import PulseRecord, ScheduleFile, load_schedule
from .sweep import COLUMNS, run_sweep
from .synthesis import RotationSpec, decompose_two_resonant, synthesize_single

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def gate_fields(prefix: str, u: np.ndarray) -> dict:
    out = {}
    for i in range(2):
        for j in range(2):
            out[f"{prefix}{i}{j}_re"] = float(u[i, j].real)
            out[f"{prefix}{i}{j}_im"] = float(u[i, j].imag)
    return out


def emit(rows: list[dict], args) -> str:
    if args.format == "structured":
        text = json.dumps(rows, indent=2, sort_keys=False) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(rows[0]))
        for row in rows:
            writer.writerow([fmt(v) for v in row.values()])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


def warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _angle(args, value):
    return math.radians(value) if args.degrees else value


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _axis(args) -> np.ndarray:
    if args.axis is None:
        raise UsageError("--axis x,y,z is required")
    v = np.array(_float_list(args.axis))
    if v.shape != (3,) or not np.all(np.isfinite(v)) or np.linalg.norm(v) == 0:
        raise UsageError(f"--axis needs three finite numbers, not all zero; got {args.axis!r}")
    return v / np.linalg.norm(v)


def _params(args) -> LaserParams:
    if args.theta is None:
        raise UsageError("--theta is required (or use --schedule)")
    try:
        return LaserParams(_angle(args, args.theta), _angle(args, args.phi), args.delta, args.f0)
    except LambdaHoloError as exc:
        raise UsageError(str(exc)) from None


def _records(args) -> ScheduleFile:
    if args.schedule:
        return load_schedule(args.schedule)
    p = _params(args)
    env = square_envelope(p)
    if getattr(args, "envelope", "square") == "gaussian":
        env = PulseEnvelope.gaussian(1.0, 5 * args.width, args.width, 10 * args.width).scaled_to_area(math.pi)
    return ScheduleFile((PulseRecord(p, env),), args.steps, args.tol)


def cmd_gate(args) -> int:
    p = _params(args)
    chi = chi_of(p.delta, p.f0_amp)
    gate = offres_gate(p.axis, chi)
    row = {
        "theta": p.theta,
        "phi": p.phi,
        "delta": p.delta,
        "f0_amp": p.f0_amp,
        "tau": cyclic_period(p.delta, p.f0_amp),
        "chi": chi,
        "rotation_angle": gate.rotation_angle,
        "axis_x": gate.axis[0],
        "axis_y": gate.axis[1],
        "axis_z": gate.axis[2],
        **gate_fields("u", gate.matrix),
    }
    emit([row], args)
    return EXIT_OK


def cmd_simulate(args) -> int:
    sched = _records(args)
    total = np.eye(3, dtype=complex)
    rows = []
    for k, rec in enumerate(sched.pulses):
        grid = TimeGrid.covering(rec.envelope, sched.steps)
        u = propagate_numeric(rec.params, rec.envelope, grid, tol=sched.tol if args.check_grid else None)
        total = u @ total
        rows.append({"stage": str(k), "leakage": subspace_return_error(u), **gate_fields("u", u[:2, :2])})
    gate, leakage = project_to_qubit(total)
    rows.append({"stage": "total", "leakage": leakage, **gate_fields("u", gate)})
    if leakage > sched.tol:
        warn(f"composed evolution leaks {leakage:.3e} out of the qubit subspace")
    emit(rows, args)
    return EXIT_OK


def cmd_synthesize(args) -> int:
    target = RotationSpec(_axis(args), _angle(args, _require(args.angle, "--angle")))
    res = synthesize_single(target, args.f0, carrier=args.carrier)
    for w in res.warnings:
        warn(w)
    p = res.params
    row = {
        "theta": p.theta,
        "phi": p.phi,
        "delta": p.delta,
        "f0_amp": p.f0_amp,
        "tau": res.tau,
        "chi": math.pi - target.angle,
        "rwa_flag": bool(res.warnings),
        **gate_fields("u", res.predicted_gate),
    }
    emit([row], args)
    return EXIT_OK


def _require(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def cmd_decompose(args) -> int:
    target = RotationSpec(_axis(args), _angle(args, _require(args.angle, "--angle")))
    n, m = decompose_two_resonant(target.matrix())
    rows = []
    for label, v in (("n", n), ("m", m)):
        theta, phi = angles_from_axis(v)
        rows.append({"pulse": label, "x": v[0], "y": v[1], "z": v[2], "theta": theta, "phi": phi})
    dist = gate_distance(compose_two(n, m).gate, target.matrix())
    if dist > args.tol:
        warn(f"recomposed gate differs from the target by {dist:.3e}")
    emit(rows, args)
    return EXIT_OK


def cmd_audit(args) -> int:
    sched = _records(args)
    rows = []
    for k, rec in enumerate(sched.pulses):
        grid = TimeGrid.covering(rec.envelope, sched.steps)
        audit = geometric_audit(rec.params, rec.envelope, grid)
        u = propagate_numeric(rec.params, rec.envelope, grid)
        rows.append(
            {
                "pulse": k,
                "kind": rec.envelope.kind,
                "area": rec.envelope.area,
                "audit_max": audit,
                "leakage": subspace_return_error(u),
                "geometric": audit < sched.tol,
            }
        )
    emit(rows, args)
    return EXIT_OK


def _sweep_ratios(args) -> list[float]:
    if args.deltas:
        return _float_list(args.deltas)
    try:
        start, stop, num = args.delta_range.split(":")
        return np.linspace(float(start), float(stop), int(num)).tolist()
    except ValueError:
        raise UsageError(f"--delta-range must be start:stop:count, got {args.delta_range!r}") from None


def cmd_sweep(args) -> int:
    axis = _axis(args) if args.axis else np.array([0.0, 0.0, 1.0])
    result = run_sweep(axis, _sweep_ratios(args), args.f0, args.steps, jobs=args.jobs)
    rows = [dict(zip(COLUMNS, r.values())) for r in result.rows]
    for r in result.rows:
        if r.rwa_flag:
            warn(f"delta/F0 = {r.delta_over_f0:g}: rotating wave approximation may fail")
    emit(rows, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = checks.run_all(seed=args.seed, steps=args.steps)
    rows = [
        {"check": r.name, "passed": r.passed, "value": r.value, "tolerance": r.tolerance} for r in results
    ]
    emit(rows, args)
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--schedule", help="YAML pulse schedule")
    common.add_argument("--theta", type=float)
    common.add_argument("--phi", type=float, default=0.0)
    common.add_argument("--delta", type=float, default=0.0)
    common.add_argument("--f0", type=float, default=1.0)
    common.add_argument("--axis", help="rotation axis as x,y,z")
    common.add_argument("--angle", type=float, help="rotation angle")
    common.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "structured"), default="csv")
    common.add_argument("--degrees", action="store_true", help="angle inputs are in degrees")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="lambdaholo", description="Holonomic gates in off-resonant Lambda systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("gate", parents=[common], help="closed-form gate for laser parameters")
    p = sub.add_parser("simulate", parents=[common], help="propagate a schedule numerically")
    p.add_argument("--check-grid", action="store_true", help="fail if step doubling changes the result")
    p = sub.add_parser("synthesize", parents=[common], help="target rotation -> pulse parameters")
    p.add_argument("--carrier", type=float, help="carrier angular frequency for the RWA check")
    sub.add_parser("decompose", parents=[common], help="target rotation -> two resonant axes")
    p = sub.add_parser("audit", parents=[common], help="geometric-purity scan")
    p.add_argument("--envelope", choices=("square", "gaussian"), default="square")
    p.add_argument("--width", type=float, default=1.0, help="gaussian width (area fixed to pi)")
    p = sub.add_parser("sweep", parents=[common], help="chi and phase versus delta/F0")
    p.add_argument("--deltas", help="comma-separated delta/F0 values")
    p.add_argument("--delta-range", default="-5:5:11", help="start:stop:count of delta/F0")
    p.add_argument("--jobs", type=int, default=1)
    sub.add_parser("verify", parents=[common], help="run the invariant suite")
    return parser


COMMANDS = {
    "gate": cmd_gate,
    "simulate": cmd_simulate,
    "synthesize": cmd_synthesize,
    "decompose": cmd_decompose,
    "audit": cmd_audit,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.steps < 1:
        print("error: --steps must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except (GridTooCoarse, NotCyclic) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, LambdaHoloError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
