"""Holonomic gates, the bright-state connection and its geometric phase.

The off-resonant gate on span{|0>, |1>} is

    U(n, chi) = |d><d| - exp(-i chi) |b><b|,   chi = pi delta / sqrt(delta^2 + 4 F0^2),

a rotation by pi - chi about n up to a global phase.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotCyclic, ParallelAxes
from .linalg import I2, PAULIS, PROJ_E, dagger, project_to_qubit, wrap_angle
from .model import (
    LaserParams,
    PulseEnvelope,
    angles_from_axis,
    bright_eigen,
    dark_bright,
    coupling_operator,
    generator,
    mixing_angle,
)
from .propagator import TimeGrid, cyclic_period, evolve_square, propagate_numeric_path

LEAKAGE_TOL = 1e-6


def _unit(axis) -> np.ndarray:
    n = np.asarray(axis, dtype=float)
    return n / np.linalg.norm(n)


def resonant_gate(axis) -> np.ndarray:
    """n . sigma, the pi rotation produced by a resonant pulse pair."""
    return np.tensordot(_unit(axis), PAULIS, axes=1)


def chi_of(delta: float, f0_amp: float) -> float:
    return math.pi * delta / math.hypot(delta, 2 * f0_amp)


@dataclass(frozen=True)
class HolonomicGate:
    axis: np.ndarray
    chi: float
    matrix: np.ndarray

    @property
    def rotation_angle(self) -> float:
        return math.pi - self.chi


def offres_gate(axis, chi: float) -> HolonomicGate:
    """|d><d| - e^{-i chi}|b><b| for the dark/bright frame of ``axis``."""
    n = _unit(axis)
    theta, phi = angles_from_axis(n)
    d, b = dark_bright(theta, phi)
    d, b = d[:2], b[:2]
    m = np.outer(d, d.conj()) - np.exp(-1j * chi) * np.outer(b, b.conj())
    return HolonomicGate(n, float(chi), m)


class Composition(NamedTuple):
    gate: np.ndarray
    angle: float
    axis: np.ndarray | None


def compose_two(n, m, require_axis: bool = False) -> Composition:
    """Gate of a pulse pair along ``n`` followed by one along ``m``.

    (m.sigma)(n.sigma) = m.n - i sigma.(n x m): a rotation by 2 arccos(n.m)
    about n x m. For (anti)parallel axes the rotation axis is undefined;
    ``axis`` is then ``None``, or :class:`ParallelAxes` is raised when
    ``require_axis`` is set.
    """
    n, m = _unit(n), _unit(m)
    cross = np.cross(n, m)
    dot = float(np.clip(n @ m, -1.0, 1.0))
    gate = dot * I2 - 1j * np.tensordot(cross, PAULIS, axes=1)
    norm = float(np.linalg.norm(cross))
    angle = 2.0 * math.acos(dot)
    if norm < 1e-12:
        if require_axis:
            raise ParallelAxes("n and m are parallel; the rotation axis is undefined")
        return Composition(gate, angle, None)
    return Composition(gate, angle, cross / norm)


def bright_trajectory(p: LaserParams, t: float) -> np.ndarray:
    """U(t, 0)|b> under the square pulse, in closed form.

    e^{-i delta t/2} (e^{-i W t/2} cos(nu)|+> + e^{+i W t/2} sin(nu)|->)
    with W = sqrt(delta^2 + 4 F0^2). The dark state does not move.
    """
    nu, plus, minus = bright_eigen(p)
    w = p.generalized_rabi
    return np.exp(-0.5j * p.delta * t) * (
        np.exp(-0.5j * w * t) * math.cos(nu) * plus + np.exp(0.5j * w * t) * math.sin(nu) * minus
    )


def connection_abb(p: LaserParams) -> float:
    """Bright-bright connection component -W sin^2(nu), constant in time."""
    nu = mixing_angle(p.delta, p.f0_amp)
    return -p.generalized_rabi * math.sin(nu) ** 2


def aa_phase(p: LaserParams) -> float:
    """Aharonov-Anandan phase of |b(t)> over one period, in (-pi, pi]."""
    nu = mixing_angle(p.delta, p.f0_amp)
    return wrap_angle(-2 * math.pi * math.sin(nu) ** 2)


def line_integral_phase(states: np.ndarray) -> float:
    """Geometric phase of a closed curve of kets sampled in order.

    Discretizes the line integral of <b|i d/dt|b> with the overlap finite
    difference -arg<b_k|b_{k+1}>, closing the loop back onto the first
    sample. The result is gauge invariant and mapped to (-pi, pi].
    """
    states = np.asarray(states, dtype=complex)
    loop = np.concatenate([states, states[:1]])
    overlaps = np.einsum("ki,ki->k", loop[:-1].conj(), loop[1:])
    return wrap_angle(-float(np.sum(np.angle(overlaps))))


def numeric_aa_phase(p: LaserParams, steps: int = 10_000) -> float:
    """AA phase from the bright state propagated step by step over one period."""
    tau = cyclic_period(p.delta, p.f0_amp)
    _, b = dark_bright(p.theta, p.phi)
    step = evolve_square(p, tau / steps)
    states = np.empty((steps, 3), dtype=complex)
    psi = b
    for k in range(steps):
        states[k] = psi
        psi = step @ psi
    return line_integral_phase(states)


def geometric_audit(p: LaserParams, env: PulseEnvelope, grid: TimeGrid | None = None) -> float:
    """Largest |<k|U^dagger(t,0) H(t) U(t,0)|l>| over grid times and k, l in {0, 1}.

    U comes from the numeric stepper even for square pulses so the check does
    not lean on the closed form. Zero means no dynamical phase on the qubit.
    """
    if grid is None:
        grid = TimeGrid.covering(env)
    times, us = propagate_numeric_path(p, env, grid)
    # include t_start itself, where U = 1
    times = np.concatenate([[grid.t_start], times])
    us = np.concatenate([np.eye(3, dtype=complex)[None], us])
    hs = env(times)[:, None, None] * coupling_operator(p.theta, p.phi) + p.delta * PROJ_E
    block = (dagger(us) @ hs @ us)[:, :2, :2]
    return float(np.max(np.abs(block)))


def commutator_norm(p1: LaserParams, p2: LaserParams, t1: float = 0.0, t2: float = 0.0) -> float:
    """Max-norm of [A(t1), A~(t2)] for two pulse pairs.

    Each connection is A_bb |b(t)><b(t)| with |b(t)> on its own square-pulse
    trajectory. Both times default to the pulse start, where the bright
    states are the bare |b> and |b~>.
    """
    a = connection_abb(p1)
    at = connection_abb(p2)
    b = bright_trajectory(p1, t1)
    bt = bright_trajectory(p2, t2)
    ov = np.vdot(b, bt)
    term = np.outer(b, bt.conj()) * ov
    comm = a * at * (term - dagger(term))
    return float(np.max(np.abs(comm)))


class Extraction(NamedTuple):
    gate: np.ndarray
    chi_est: float
    leakage: float
    axis: np.ndarray


def extract_holonomy(u: np.ndarray, axis=None, leakage_tol: float = LEAKAGE_TOL) -> Extraction:
    """Read the holonomy (axis, chi) back out of a simulated 3x3 propagator.

    With ``axis`` the dark/bright frame comes from it; otherwise the 2x2
    block is diagonalized and the eigenvector whose eigenvalue is nearest 1
    is taken as the dark state (exact for the bare pulse propagator, where
    the dark state is stationary). chi_est = -arg(-<b|U|b> / <d|U|d>).
    """
    gate, leakage = project_to_qubit(u)
    if leakage >= leakage_tol:
        raise NotCyclic(f"leakage {leakage:.3e} out of the qubit subspace >= {leakage_tol:g}")
    if axis is not None:
        theta, phi = angles_from_axis(axis)
        d, b = (v[:2] for v in dark_bright(theta, phi))
    else:
        w, v = np.linalg.eig(gate)
        k = int(np.argmin(np.abs(w - 1)))
        d = v[:, k] / np.linalg.norm(v[:, k])
        b = np.array([-np.conj(d[1]), np.conj(d[0])])
    ratio = np.vdot(b, gate @ b) / np.vdot(d, gate @ d)
    chi = wrap_angle(-np.angle(-ratio))
    n = np.array([np.vdot(b, s @ b).real for s in PAULIS])
    # |b> is the -1 eigenvector of n.sigma
    return Extraction(gate, chi, leakage, -n / np.linalg.norm(n))


def holonomy_from_phase(axis, gamma: float) -> np.ndarray:
    """|d><d| + e^{i gamma}|b><b|, the holonomy written through the AA phase."""
    theta, phi = angles_from_axis(axis)
    d, b = (v[:2] for v in dark_bright(theta, phi))
    return np.outer(d, d.conj()) + np.exp(1j * gamma) * np.outer(b, b.conj())


def square_generator_commutator(p: LaserParams, t: float) -> float:
    """Max-norm of [U(t,0), H] for the constant square-pulse generator."""
    h = generator(p)
    u = evolve_square(p, t)
    return float(np.max(np.abs(u @ h - h @ u)))
