"""Small dense complex linear algebra on the Lambda-system Hilbert space.

Basis order is fixed to (|0>, |1>, |e>) -> indices 0, 1, 2 everywhere in the
package. Qubit gates live on the first two indices.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NonHermitianInput, NonUnitaryInput

HERMITIAN_TOL = 1e-9
UNITARY_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])


def ket(*amplitudes) -> np.ndarray:
    return np.asarray(amplitudes, dtype=complex)


KET0 = ket(1, 0, 0)
KET1 = ket(0, 1, 0)
KETE = ket(0, 0, 1)
PROJ_E = np.diag([0, 0, 1]).astype(complex)


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def hermiticity_defect(h: np.ndarray) -> float:
    return float(np.max(np.abs(h - dagger(h))))


def unitarity_defect(u: np.ndarray) -> float:
    """Max-norm of U^dagger U - 1."""
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(dagger(u) @ u - np.eye(u.shape[-1]))))


def expm_hermitian(h: np.ndarray, t: float = 1.0) -> np.ndarray:
    """Return exp(-i h t) for Hermitian ``h`` via its spectral decomposition.

    ``h`` may also be a stack of shape (..., n, n); every slice is
    exponentiated independently.
    """
    h = np.asarray(h, dtype=complex)
    if not np.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    defect = hermiticity_defect(h)
    if defect > HERMITIAN_TOL:
        raise NonHermitianInput(f"Hermiticity defect {defect:.3e} exceeds {HERMITIAN_TOL:g}")
    h = 0.5 * (h + dagger(h))
    w, v = np.linalg.eigh(h)
    phases = np.exp(-1j * t * w)
    return (v * phases[..., None, :]) @ dagger(v)


class Projection(NamedTuple):
    gate: np.ndarray
    leakage: float


def project_to_qubit(u: np.ndarray) -> Projection:
    """Restrict a 3x3 operator to the computational subspace.

    Leakage is the population sent to |e> from |0> and |1>, summed. It is
    reported rather than raised on.
    """
    u = np.asarray(u, dtype=complex)
    leakage = float(abs(u[2, 0]) ** 2 + abs(u[2, 1]) ** 2)
    return Projection(u[:2, :2].copy(), leakage)


def _require_unitary(u: np.ndarray, name: str) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise NonUnitaryInput(f"{name} must be 2x2, got shape {u.shape}")
    defect = unitarity_defect(u)
    if defect > UNITARY_TOL:
        raise NonUnitaryInput(f"{name} has unitarity defect {defect:.3e}")
    return u


def gate_distance(u: np.ndarray, v: np.ndarray) -> float:
    """1 - |Tr(U^dagger V)| / 2, blind to the global phase of either gate."""
    u = _require_unitary(u, "U")
    v = _require_unitary(v, "V")
    overlap = abs(np.trace(dagger(u) @ v)) / 2
    return float(max(0.0, 1.0 - overlap))


def wrap_angle(a: float) -> float:
    """Map an angle into (-pi, pi]."""
    a = float(np.remainder(a + np.pi, 2 * np.pi) - np.pi)
    return np.pi if a == -np.pi else a


def to_su2(u: np.ndarray) -> np.ndarray:
    """Rescale a 2x2 unitary to unit determinant (one of the two choices)."""
    u = np.asarray(u, dtype=complex)
    return u / np.sqrt(np.linalg.det(u))


def su2_axis_angle(u: np.ndarray) -> tuple[float, np.ndarray | None]:
    """Rotation angle in [0, pi] and unit axis of a 2x2 unitary.

    The global phase is removed first, so ``u`` and ``-u`` give the same
    rotation. The axis is ``None`` for the identity.
    """
    v = to_su2(u)
    # v = c*1 - i*s*(k . sigma), (c, s*k) a unit quaternion up to sign
    c = 0.5 * np.trace(v).real
    sk = np.array([0.5 * np.trace(p @ v).imag for p in PAULIS]) * -1.0
    if c < 0:
        c, sk = -c, -sk
    s = float(np.linalg.norm(sk))
    angle = 2.0 * np.arctan2(s, c)
    if s < 1e-15:
        return float(angle), None
    return float(angle), sk / s


def rotation(axis, angle: float) -> np.ndarray:
    """exp(-i angle/2 axis.sigma)."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    ns = np.tensordot(n, PAULIS, axes=1)
    return np.cos(angle / 2) * I2 - 1j * np.sin(angle / 2) * ns


def su2_angle(v: np.ndarray) -> float:
    """Rotation angle in [0, 2pi] of an SU(2) matrix, sign kept (v and -v differ)."""
    v = np.asarray(v, dtype=complex)
    c = 0.5 * np.trace(v).real
    s = float(np.linalg.norm([0.5 * np.trace(p @ v).imag for p in PAULIS]))
    return float(2.0 * np.arctan2(s, c))
