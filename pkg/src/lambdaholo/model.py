"""Lambda-system Hamiltonian, laser parameters, dark/bright frame, envelopes."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import BadEnvelopeSpec, InvalidParams
from .linalg import KET0, KET1, KETE, PROJ_E

TWO_PI = 2 * math.pi
POLE_TOL = 1e-15
AREA_SAMPLES = 20001


@dataclass(frozen=True)
class LaserParams:
    """Control tuple of one pulse pair.

    ``phi`` is reduced into [0, 2pi) and set to 0 when ``theta`` sits at a
    pole, where it has no effect.
    """

    theta: float
    phi: float = 0.0
    delta: float = 0.0
    f0_amp: float = 1.0

    def __post_init__(self):
        for name in ("theta", "phi", "delta", "f0_amp"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParams(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, float(value))
        if not 0.0 <= self.theta <= math.pi:
            raise InvalidParams(f"theta must lie in [0, pi], got {self.theta}")
        if self.f0_amp <= 0:
            raise InvalidParams(f"f0_amp must be > 0, got {self.f0_amp}")
        phi = math.fmod(self.phi, TWO_PI)
        if phi < 0:
            phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        if self.theta < POLE_TOL or math.pi - self.theta < POLE_TOL:
            phi = 0.0
        object.__setattr__(self, "phi", phi)

    @property
    def rabi_0(self) -> complex:
        """f0 / F(t): coupling of |0> to |e> per unit envelope."""
        return complex(np.exp(1j * self.phi) * math.sin(self.theta / 2))

    @property
    def rabi_1(self) -> float:
        return -math.cos(self.theta / 2)

    @property
    def generalized_rabi(self) -> float:
        return math.sqrt(self.delta**2 + 4 * self.f0_amp**2)

    @property
    def axis(self) -> np.ndarray:
        return axis_from_angles(self.theta, self.phi)

    def replace(self, **changes) -> "LaserParams":
        kw = dict(theta=self.theta, phi=self.phi, delta=self.delta, f0_amp=self.f0_amp)
        kw.update(changes)
        return LaserParams(**kw)


def axis_from_angles(theta: float, phi: float) -> np.ndarray:
    """Bloch axis n = (sin t cos p, sin t sin p, cos t)."""
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def angles_from_axis(axis) -> tuple[float, float]:
    """Inverse of :func:`axis_from_angles`; phi in [0, 2pi), 0 at the poles."""
    n = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(n)
    if not norm > 0 or not np.all(np.isfinite(n)):
        raise InvalidParams(f"axis must be a finite nonzero 3-vector, got {axis}")
    x, y, z = n / norm
    theta = math.atan2(math.hypot(x, y), z)
    if math.hypot(x, y) < POLE_TOL:
        return theta, 0.0
    phi = math.atan2(y, x) % TWO_PI
    return theta, (0.0 if phi >= TWO_PI else phi)


def coupling_operator(theta: float, phi: float) -> np.ndarray:
    """H0 = e^{i phi} sin(theta/2)|e><0| - cos(theta/2)|e><1| + h.c.

    The sign of the laser phase is chosen so that the resonant gate is
    n.sigma with n = axis_from_angles(theta, phi) in the standard Pauli
    convention.
    """
    h = np.zeros((3, 3), dtype=complex)
    h[2, 0] = np.exp(1j * phi) * math.sin(theta / 2)
    h[2, 1] = -math.cos(theta / 2)
    h[0, 2] = np.conj(h[2, 0])
    h[1, 2] = h[2, 1]
    return h


def generator(p: LaserParams, amplitude: float | None = None) -> np.ndarray:
    """Constant Hamiltonian F*H0 + delta|e><e| for envelope value ``amplitude``."""
    f = p.f0_amp if amplitude is None else amplitude
    return f * coupling_operator(p.theta, p.phi) + p.delta * PROJ_E


def dark_bright(theta: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Dark state (annihilated by H0) and bright state (H0|b> = |e>).

    d = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
    b = e^{-i phi} sin(theta/2)|0> - cos(theta/2)|1>
    """
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    d = c * KET0 + np.exp(1j * phi) * s * KET1
    b = np.exp(-1j * phi) * s * KET0 - c * KET1
    return d, b


class BrightEigen(NamedTuple):
    nu: float
    plus: np.ndarray
    minus: np.ndarray


def mixing_angle(delta: float, f0_amp: float) -> float:
    """nu in (0, pi/2) with tan(nu) = (delta + sqrt(delta^2 + 4 F0^2)) / (2 F0)."""
    omega = math.sqrt(delta**2 + 4 * f0_amp**2)
    if delta >= 0:
        return math.atan2(delta + omega, 2 * f0_amp)
    # delta + omega cancels for delta << 0; use (delta+omega) = 4F0^2/(omega-delta)
    return math.atan2(4 * f0_amp**2 / (omega - delta), 2 * f0_amp)


def bright_eigen(p: LaserParams) -> BrightEigen:
    """Eigenstates of F0*H0 + delta|e><e| inside span{|b>, |e>}.

    ``plus`` has eigenvalue (delta + W)/2 and ``minus`` has (delta - W)/2 with
    W = sqrt(delta^2 + 4 F0^2). Phases are fixed so that
    |b> = cos(nu)|+> + sin(nu)|->.
    """
    nu = mixing_angle(p.delta, p.f0_amp)
    _, b = dark_bright(p.theta, p.phi)
    c, s = math.cos(nu), math.sin(nu)
    plus = c * b + s * KETE
    minus = s * b - c * KETE
    return BrightEigen(nu, plus, minus)


@dataclass(frozen=True)
class PulseEnvelope:
    """Real pulse envelope F(t), zero outside [0, duration].

    Build instances with :func:`make_envelope` or the ``square``/``gaussian``/
    ``tabulated`` constructors.
    """

    kind: str
    duration: float
    amplitude: float = 0.0
    peak: float = 0.0
    center: float = 0.0
    width: float = 0.0
    samples: tuple = field(default=(), repr=False)

    @classmethod
    def square(cls, amplitude: float, duration: float) -> "PulseEnvelope":
        return make_envelope("square", amplitude=amplitude, duration=duration)

    @classmethod
    def gaussian(cls, peak, center, width, duration) -> "PulseEnvelope":
        return make_envelope("gaussian", peak=peak, center=center, width=width, duration=duration)

    @classmethod
    def tabulated(cls, samples, duration) -> "PulseEnvelope":
        return make_envelope("tabulated", samples=samples, duration=duration)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        inside = (t >= 0) & (t <= self.duration)
        if self.kind == "square":
            out = np.where(inside, self.amplitude, 0.0)
        elif self.kind == "gaussian":
            out = np.where(inside, self.peak * np.exp(-0.5 * ((t - self.center) / self.width) ** 2), 0.0)
        else:
            grid = np.linspace(0.0, self.duration, len(self.samples))
            out = np.where(inside, np.interp(t, grid, self.samples), 0.0)
        return float(out) if out.ndim == 0 else out

    @property
    def area(self) -> float:
        """Pulse area; trapezoid rule for the non-square kinds."""
        if self.kind == "square":
            return self.amplitude * self.duration
        if self.kind == "tabulated":
            return float(np.trapezoid(self.samples, dx=self.duration / (len(self.samples) - 1)))
        t = np.linspace(0.0, self.duration, AREA_SAMPLES)
        return float(np.trapezoid(self(t), t))

    def breakpoints(self) -> tuple[float, float]:
        return 0.0, self.duration

    def scaled_to_area(self, area: float) -> "PulseEnvelope":
        """Same shape, rescaled so that the pulse area equals ``area``."""
        k = area / self.area
        if self.kind == "square":
            return make_envelope("square", amplitude=self.amplitude * k, duration=self.duration)
        if self.kind == "gaussian":
            return make_envelope("gaussian", peak=self.peak * k, center=self.center,
                                 width=self.width, duration=self.duration)
        return make_envelope("tabulated", samples=np.asarray(self.samples) * k, duration=self.duration)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "duration": self.duration}
        if self.kind == "square":
            d["amplitude"] = self.amplitude
        elif self.kind == "gaussian":
            d.update(peak=self.peak, center=self.center, width=self.width)
        else:
            d["samples"] = list(self.samples)
        return d


def _positive_finite(name, value) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise BadEnvelopeSpec(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(value) or value <= 0:
        raise BadEnvelopeSpec(f"{name} must be finite and > 0, got {value}")
    return value


def _finite(name, value) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise BadEnvelopeSpec(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(value):
        raise BadEnvelopeSpec(f"{name} must be finite, got {value}")
    return value


def make_envelope(kind: str, **params) -> PulseEnvelope:
    """Validate envelope parameters and build a :class:`PulseEnvelope`.

    kinds and their parameters:
      square     amplitude, duration
      gaussian   peak, center, width, duration (truncated to [0, duration])
      tabulated  samples (>= 2, uniform over [0, duration]), duration
    """
    kind = str(kind).lower()
    params = dict(params)
    if "duration" not in params:
        raise BadEnvelopeSpec("duration is required")
    duration = _positive_finite("duration", params.pop("duration"))
    allowed = {"square": {"amplitude"}, "gaussian": {"peak", "center", "width"}, "tabulated": {"samples"}}
    if kind not in allowed:
        raise BadEnvelopeSpec(f"unknown envelope kind {kind!r}; expected one of {sorted(allowed)}")
    missing = allowed[kind] - params.keys()
    extra = params.keys() - allowed[kind]
    if missing:
        raise BadEnvelopeSpec(f"{kind} envelope missing {sorted(missing)}")
    if extra:
        raise BadEnvelopeSpec(f"{kind} envelope got unexpected {sorted(extra)}")

    if kind == "square":
        return PulseEnvelope(kind, duration, amplitude=_finite("amplitude", params["amplitude"]))
    if kind == "gaussian":
        return PulseEnvelope(
            kind,
            duration,
            peak=_finite("peak", params["peak"]),
            center=_finite("center", params["center"]),
            width=_positive_finite("width", params["width"]),
        )
    try:
        samples = np.asarray(params["samples"], dtype=float)
    except (TypeError, ValueError):
        raise BadEnvelopeSpec("samples must be a list of numbers") from None
    if samples.ndim != 1 or samples.size < 2:
        raise BadEnvelopeSpec("tabulated envelope needs at least 2 samples")
    if not np.all(np.isfinite(samples)):
        raise BadEnvelopeSpec("samples must be finite")
    return PulseEnvelope(kind, duration, samples=tuple(samples.tolist()))


def hamiltonian(p: LaserParams, env: PulseEnvelope, t: float) -> np.ndarray:
    """Rotating-frame Hamiltonian F(t)*H0 + delta|e><e| at time ``t``."""
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t}")
    return generator(p, env(t))
