"""Detuning sweeps of the off-resonant holonomic gate."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .holonomy import aa_phase, chi_of, extract_holonomy, geometric_audit
from .model import LaserParams, angles_from_axis
from .propagator import DEFAULT_STEPS, TimeGrid, propagate_numeric, square_envelope
from .synthesis import rwa_warning

COLUMNS = (
    "delta_over_f0",
    "tau",
    "chi_analytic",
    "chi_numeric",
    "aa_phase",
    "rotation_angle",
    "leakage",
    "audit_max",
    "rwa_flag",
)


@dataclass(frozen=True)
class SweepRow:
    delta_over_f0: float
    tau: float
    chi_analytic: float
    chi_numeric: float
    aa_phase: float
    rotation_angle: float
    leakage: float
    audit_max: float
    rwa_flag: bool

    def values(self) -> tuple:
        return tuple(getattr(self, c) for c in COLUMNS)


@dataclass(frozen=True)
class SweepResult:
    rows: tuple

    @property
    def columns(self) -> tuple:
        return COLUMNS

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows], dtype=float)


def sweep_point(axis, ratio: float, f0_amp: float = 1.0, steps: int = DEFAULT_STEPS) -> SweepRow:
    theta, phi = angles_from_axis(axis)
    p = LaserParams(theta, phi, ratio * f0_amp, f0_amp)
    env = square_envelope(p)
    grid = TimeGrid.covering(env, steps)
    u = propagate_numeric(p, env, grid)
    ext = extract_holonomy(u, axis=p.axis)
    return SweepRow(
        delta_over_f0=float(ratio),
        tau=env.duration,
        chi_analytic=chi_of(p.delta, f0_amp),
        chi_numeric=ext.chi_est,
        aa_phase=aa_phase(p),
        rotation_angle=math.pi - ext.chi_est,
        leakage=ext.leakage,
        audit_max=geometric_audit(p, env, grid),
        rwa_flag=rwa_warning(p) is not None,
    )


def run_sweep(axis, delta_range, f0_amp: float = 1.0, steps: int = DEFAULT_STEPS, jobs: int = 1) -> SweepResult:
    """Evaluate the gate at each delta/F0 in ``delta_range``.

    Rows keep the input order whatever ``jobs`` is.
    """
    if f0_amp <= 0:
        raise ValueError(f"f0_amp must be > 0, got {f0_amp}")
    ratios = [float(r) for r in delta_range]
    if not ratios:
        raise ValueError("delta_range is empty")

    def point(r):
        return sweep_point(axis, r, f0_amp, steps)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(point, ratios))
    else:
        rows = [point(r) for r in ratios]
    return SweepResult(tuple(rows))
