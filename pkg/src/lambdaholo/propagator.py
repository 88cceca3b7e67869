"""Time evolution: closed-form square pulses and a midpoint-exponential stepper."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridTooCoarse
from .linalg import PROJ_E, expm_hermitian, unitarity_defect
from .model import LaserParams, PulseEnvelope, coupling_operator, generator

DEFAULT_STEPS = 10_000
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class TimeGrid:
    t_start: float
    t_end: float
    steps: int = DEFAULT_STEPS

    def __post_init__(self):
        if not (math.isfinite(self.t_start) and math.isfinite(self.t_end)):
            raise ValueError("grid end points must be finite")
        if self.t_end <= self.t_start:
            raise ValueError(f"t_end ({self.t_end}) must exceed t_start ({self.t_start})")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValueError(f"steps must be a positive integer, got {self.steps}")

    @classmethod
    def covering(cls, env: PulseEnvelope, steps: int = DEFAULT_STEPS) -> "TimeGrid":
        return cls(0.0, env.duration, steps)

    def refined(self, factor: int = 2) -> "TimeGrid":
        return TimeGrid(self.t_start, self.t_end, self.steps * factor)


def cyclic_period(delta: float, f0_amp: float) -> float:
    """tau = 2 pi / sqrt(delta^2 + 4 F0^2)."""
    if f0_amp <= 0:
        raise ValueError(f"f0_amp must be > 0, got {f0_amp}")
    return 2 * math.pi / math.hypot(delta, 2 * f0_amp)


def square_envelope(p: LaserParams) -> PulseEnvelope:
    """Square pulse of amplitude F0 lasting exactly one cyclic period."""
    return PulseEnvelope.square(p.f0_amp, cyclic_period(p.delta, p.f0_amp))


def evolve_square(p: LaserParams, t: float) -> np.ndarray:
    """U(t, 0) under the constant square-pulse generator, for any t."""
    return expm_hermitian(generator(p), t)


def propagate_square(p: LaserParams) -> np.ndarray:
    """U(tau, 0) for a square pulse lasting one cyclic period."""
    return evolve_square(p, cyclic_period(p.delta, p.f0_amp))


def free_evolution(delta: float, t: float) -> np.ndarray:
    """Off-pulse evolution exp(-i t delta |e><e|)."""
    return expm_hermitian(delta * PROJ_E, t)


def _segments(env: PulseEnvelope, grid: TimeGrid) -> list[tuple[float, float, int]]:
    # Split at the envelope edges so no step straddles a discontinuity.
    cuts = [grid.t_start]
    cuts += [b for b in env.breakpoints() if grid.t_start < b < grid.t_end]
    cuts.append(grid.t_end)
    span = grid.t_end - grid.t_start
    segs = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        n = max(1, int(round(grid.steps * (b - a) / span)))
        segs.append((a, b, n))
    return segs


def step_midpoints(env: PulseEnvelope, grid: TimeGrid) -> tuple[np.ndarray, np.ndarray]:
    """Midpoints and widths of every substep, in time order."""
    mids, widths = [], []
    for a, b, n in _segments(env, grid):
        dt = (b - a) / n
        mids.append(a + dt * (np.arange(n) + 0.5))
        widths.append(np.full(n, dt))
    return np.concatenate(mids), np.concatenate(widths)


def step_unitaries(p: LaserParams, env: PulseEnvelope, grid: TimeGrid):
    """Per-step exponentials exp(-i H(t_mid) dt), plus the step end times."""
    mids, widths = step_midpoints(env, grid)
    h0 = coupling_operator(p.theta, p.phi)
    hs = env(mids)[:, None, None] * h0 + p.delta * PROJ_E
    # fold dt into the generator: exp(-i H dt)
    steps = expm_hermitian(hs * widths[:, None, None], 1.0)
    ends = mids + 0.5 * widths
    return steps, ends


def _ordered_product(steps: np.ndarray) -> np.ndarray:
    u = np.eye(3, dtype=complex)
    for s in steps:
        u = s @ u
    return u


def propagate_numeric(
    p: LaserParams,
    env: PulseEnvelope,
    grid: TimeGrid | None = None,
    tol: float | None = None,
) -> np.ndarray:
    """Time-ordered propagator U(t_end, t_start) by midpoint exponentials.

    Each substep is exactly unitary and the scheme is second-order accurate.
    When ``tol`` is given the step count is doubled once and
    :class:`GridTooCoarse` is raised if the two results differ by more than
    ``tol`` in max-norm.
    """
    if grid is None:
        grid = TimeGrid.covering(env)
    u = _ordered_product(step_unitaries(p, env, grid)[0])
    if tol is not None:
        fine = _ordered_product(step_unitaries(p, env, grid.refined())[0])
        change = float(np.max(np.abs(fine - u)))
        if change > tol:
            raise GridTooCoarse(
                f"doubling {grid.steps} steps changed the propagator by {change:.3e} > {tol:g}"
            )
        u = fine
    return u


def propagate_numeric_path(p: LaserParams, env: PulseEnvelope, grid: TimeGrid | None = None):
    """Cumulative propagators U(t_k, t_start) at every step end time t_k.

    Returns ``(times, unitaries)`` with ``unitaries[k]`` for ``times[k]``.
    """
    if grid is None:
        grid = TimeGrid.covering(env)
    steps, ends = step_unitaries(p, env, grid)
    out = np.empty_like(steps)
    u = np.eye(3, dtype=complex)
    for k, s in enumerate(steps):
        u = s @ u
        out[k] = u
    return ends, out


def subspace_return_error(u: np.ndarray) -> float:
    """Population leaving span{|0>, |1>}; zero certifies a cyclic evolution."""
    u = np.asarray(u, dtype=complex)
    return float(abs(u[2, 0]) ** 2 + abs(u[2, 1]) ** 2)


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    return unitarity_defect(u) < tol
