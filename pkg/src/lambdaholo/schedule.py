"""Pulse-schedule files.

A schedule is a YAML document::

    version: 1
    pulses:
      - theta: 1.5707963267948966
        phi: 0.0
        delta: 0.0
        f0_amp: 1.0
        envelope:            # optional; default is a square pulse of one cyclic period
          kind: square
          duration: 3.141592653589793
          amplitude: 1.0
    options:
      steps: 10000
      tol: 1.0e-9
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import yaml

from .errors import BadEnvelopeSpec, InvalidParams, LambdaHoloError
from .model import LaserParams, PulseEnvelope, make_envelope
from .propagator import DEFAULT_STEPS, DEFAULT_TOL, square_envelope

SCHEDULE_VERSION = 1


class ParseError(LambdaHoloError, ValueError):
    pass


class ValidationError(LambdaHoloError, ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class PulseRecord:
    params: LaserParams
    envelope: PulseEnvelope


@dataclass(frozen=True)
class ScheduleFile:
    pulses: tuple
    steps: int = DEFAULT_STEPS
    tol: float = DEFAULT_TOL
    version: int = SCHEDULE_VERSION
    extra_options: dict = field(default_factory=dict)


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(path, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ValidationError(path, f"must be finite, got {value}")
    return float(value)


def _pulse(raw, path) -> PulseRecord:
    if not isinstance(raw, dict):
        raise ValidationError(path, "pulse record must be a mapping")
    unknown = set(raw) - {"theta", "phi", "delta", "f0_amp", "envelope"}
    if unknown:
        raise ValidationError(f"{path}.{sorted(unknown)[0]}", "unknown key")
    if "theta" not in raw:
        raise ValidationError(f"{path}.theta", "required")
    vals = {}
    for key, default in (("theta", None), ("phi", 0.0), ("delta", 0.0), ("f0_amp", 1.0)):
        vals[key] = _number(raw.get(key, default), f"{path}.{key}")
    if not 0.0 <= vals["theta"] <= math.pi:
        raise ValidationError(f"{path}.theta", f"must lie in [0, pi], got {vals['theta']}")
    if vals["f0_amp"] <= 0:
        raise ValidationError(f"{path}.f0_amp", f"must be > 0, got {vals['f0_amp']}")
    try:
        params = LaserParams(**vals)
    except InvalidParams as exc:
        raise ValidationError(path, str(exc)) from None
    env_raw = raw.get("envelope")
    if env_raw is None:
        return PulseRecord(params, square_envelope(params))
    if not isinstance(env_raw, dict) or "kind" not in env_raw:
        raise ValidationError(f"{path}.envelope", "must be a mapping with a 'kind' key")
    spec = dict(env_raw)
    try:
        env = make_envelope(spec.pop("kind"), **spec)
    except BadEnvelopeSpec as exc:
        raise ValidationError(f"{path}.envelope", str(exc)) from None
    return PulseRecord(params, env)


def parse_schedule(text: str) -> ScheduleFile:
    """Parse and validate schedule text; errors name the offending key."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed schedule: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("schedule must be a mapping at the top level")
    version = doc.get("version")
    if version != SCHEDULE_VERSION:
        raise ValidationError("version", f"must be {SCHEDULE_VERSION}, got {version!r}")
    pulses = doc.get("pulses")
    if not isinstance(pulses, list) or not pulses:
        raise ValidationError("pulses", "must be a non-empty list")
    records = tuple(_pulse(raw, f"pulses[{i}]") for i, raw in enumerate(pulses))

    options = doc.get("options") or {}
    if not isinstance(options, dict):
        raise ValidationError("options", "must be a mapping")
    options = dict(options)
    steps = options.pop("steps", DEFAULT_STEPS)
    if isinstance(steps, bool) or not isinstance(steps, int) or steps < 1:
        raise ValidationError("options.steps", f"must be a positive integer, got {steps!r}")
    tol = _number(options.pop("tol", DEFAULT_TOL), "options.tol")
    if tol <= 0:
        raise ValidationError("options.tol", f"must be > 0, got {tol}")
    unknown = set(doc) - {"version", "pulses", "options"}
    if unknown:
        raise ValidationError(sorted(unknown)[0], "unknown key")
    return ScheduleFile(records, steps, tol, version, options)


def serialize_schedule(schedule: ScheduleFile) -> str:
    pulses = []
    for rec in schedule.pulses:
        p = rec.params
        pulses.append(
            {
                "theta": p.theta,
                "phi": p.phi,
                "delta": p.delta,
                "f0_amp": p.f0_amp,
                "envelope": rec.envelope.to_dict(),
            }
        )
    doc = {
        "version": schedule.version,
        "pulses": pulses,
        "options": {"steps": schedule.steps, "tol": schedule.tol, **schedule.extra_options},
    }
    return yaml.safe_dump(doc, sort_keys=False)


def load_schedule(path) -> ScheduleFile:
    with open(path, encoding="utf-8") as fh:
        return parse_schedule(fh.read())
