"""Compile target rotations into pulse parameters."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AngleOutOfRange
from .holonomy import offres_gate
from .linalg import PAULIS, dagger, su2_axis_angle
from .model import LaserParams, angles_from_axis
from .propagator import cyclic_period

RWA_MAX_DETUNING_RATIO = 20.0
RWA_MIN_CYCLES = 100.0


@dataclass(frozen=True)
class RotationSpec:
    """Rotation by ``angle`` (radians, in (0, 2pi)) about a unit ``axis``."""

    axis: np.ndarray
    angle: float

    def __post_init__(self):
        n = np.asarray(self.axis, dtype=float)
        if n.shape != (3,) or not np.all(np.isfinite(n)) or np.linalg.norm(n) == 0:
            raise ValueError(f"axis must be a finite nonzero 3-vector, got {self.axis}")
        object.__setattr__(self, "axis", n / np.linalg.norm(n))
        object.__setattr__(self, "angle", float(self.angle))

    def matrix(self) -> np.ndarray:
        """exp(-i angle/2 axis.sigma)."""
        ns = np.tensordot(self.axis, PAULIS, axes=1)
        return math.cos(self.angle / 2) * np.eye(2) - 1j * math.sin(self.angle / 2) * ns


@dataclass(frozen=True)
class SynthesisResult:
    params: LaserParams
    tau: float
    predicted_gate: np.ndarray
    warnings: list = field(default_factory=list)


def rwa_warning(
    p: LaserParams,
    carrier: float | None = None,
    min_cycles: float = RWA_MIN_CYCLES,
    max_ratio: float = RWA_MAX_DETUNING_RATIO,
) -> str | None:
    """Advisory check that the rotating wave approximation is plausible.

    With a carrier angular frequency, flags pulses shorter than ``min_cycles``
    carrier periods. Without one, flags |delta|/F0 above ``max_ratio``. The
    defaults are engineering choices; nothing here blocks a result.
    """
    if carrier is not None:
        tau = cyclic_period(p.delta, p.f0_amp)
        if tau * carrier < 2 * math.pi * min_cycles:
            cycles = tau * carrier / (2 * math.pi)
            return (
                f"pulse lasts {cycles:.3g} carrier cycles (< {min_cycles:g}); "
                "rotating wave approximation may fail"
            )
        return None
    ratio = abs(p.delta) / p.f0_amp
    if ratio > max_ratio:
        return (
            f"|delta|/F0 = {ratio:.3g} exceeds {max_ratio:g}: short pulse, "
            "rotating wave approximation may fail"
        )
    return None


def detuning_for_chi(chi: float, f0_amp: float) -> float:
    """Inverse of chi = pi delta / sqrt(delta^2 + 4 F0^2) for chi in (-pi, pi)."""
    if not -math.pi < chi < math.pi:
        raise AngleOutOfRange(f"chi must lie in (-pi, pi), got {chi}")
    if chi == 0:
        return 0.0
    return 2 * f0_amp * chi / math.sqrt((math.pi - chi) * (math.pi + chi))


def synthesize_single(
    target: RotationSpec,
    f0_amp: float = 1.0,
    carrier: float | None = None,
    max_ratio: float = RWA_MAX_DETUNING_RATIO,
    min_cycles: float = RWA_MIN_CYCLES,
) -> SynthesisResult:
    """One off-resonant pulse pair realizing ``target`` up to global phase.

    The axis fixes (theta, phi); chi = pi - angle sets the detuning. Angles
    above pi map to negative detuning.
    """
    if f0_amp <= 0:
        raise ValueError(f"f0_amp must be > 0, got {f0_amp}")
    if not 0 < target.angle < 2 * math.pi:
        raise AngleOutOfRange(f"rotation angle must lie in (0, 2pi), got {target.angle}")
    theta, phi = angles_from_axis(target.axis)
    chi = math.pi - target.angle
    p = LaserParams(theta, phi, detuning_for_chi(chi, f0_amp), f0_amp)
    gate = offres_gate(target.axis, chi).matrix
    warnings = []
    w = rwa_warning(p, carrier, min_cycles=min_cycles, max_ratio=max_ratio)
    if w:
        warnings.append(w)
    return SynthesisResult(p, cyclic_period(p.delta, f0_amp), gate, warnings)


def _perpendicular_in_plane(k: np.ndarray) -> np.ndarray:
    ref = np.array([0.0, 0.0, 1.0])
    if abs(k @ ref) > 1 - 1e-12:
        ref = np.array([1.0, 0.0, 0.0])
    n = ref - (ref @ k) * k
    return n / np.linalg.norm(n)


def decompose_two_resonant(target: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Axes (n, m) of two resonant pulse pairs with (m.sigma)(n.sigma) ~ target.

    The gauge freedom of rotating both axes about the target axis is fixed by
    putting n in the plane of the target axis and z (x when the axis is +-z).
    Identity targets return n = m = z.
    """
    angle, k = su2_axis_angle(target)
    z = np.array([0.0, 0.0, 1.0])
    if k is None or math.sin(angle / 2) < 1e-15:
        return z, z.copy()
    n = _perpendicular_in_plane(k)
    m = math.cos(angle / 2) * n + math.sin(angle / 2) * np.cross(k, n)
    return n, m / np.linalg.norm(m)


def average_gate_fidelity(u: np.ndarray, v: np.ndarray) -> float:
    """(|Tr(U^dagger V)|^2 / 2 + 1) / 3 for 2x2 unitaries."""
    tr = np.trace(dagger(np.asarray(u, dtype=complex)) @ np.asarray(v, dtype=complex))
    return float((abs(tr) ** 2 / 2 + 1) / 3)

