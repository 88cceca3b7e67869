"""Invariant suite run by ``lambdaholo verify``."""
from __future__ import annotations

import itertools
import math
from typing import NamedTuple

import numpy as np

from .holonomy import (
    aa_phase,
    chi_of,
    commutator_norm,
    compose_two,
    connection_abb,
    extract_holonomy,
    geometric_audit,
    numeric_aa_phase,
    offres_gate,
    resonant_gate,
)
from .linalg import gate_distance, project_to_qubit, su2_angle, wrap_angle
from .model import LaserParams, PulseEnvelope
from .propagator import TimeGrid, propagate_numeric, propagate_square, square_envelope
from .synthesis import RotationSpec, average_gate_fidelity, decompose_two_resonant, synthesize_single

THETAS = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi)
PHIS = (0.0, math.pi / 3, math.pi, 3 * math.pi / 2)
RATIOS = (-5.0, -2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0, 5.0)
SYNTH_ANGLES = tuple(k * math.pi / 6 for k in (1, 2, 3, 4, 6, 8, 11))


class CheckResult(NamedTuple):
    name: str
    passed: bool
    value: float
    tolerance: float


def random_axes(rng: np.random.Generator, count: int) -> np.ndarray:
    v = rng.normal(size=(count, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def haar_su2(rng: np.random.Generator, count: int) -> list[np.ndarray]:
    """Haar-random SU(2) elements from uniformly distributed unit quaternions."""
    q = rng.normal(size=(count, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    out = []
    for a, b, c, d in q:
        out.append(np.array([[a - 1j * d, -c - 1j * b], [c - 1j * b, a + 1j * d]]))
    return out


def _grid_params(ratio, theta=math.pi / 3, phi=math.pi / 5):
    return LaserParams(theta, phi, ratio, 1.0)


def check_resonant(steps: int) -> CheckResult:
    dist = leak = 0.0
    for theta, phi in itertools.product(THETAS, PHIS):
        p = LaserParams(theta, phi, 0.0, 1.0)
        env = square_envelope(p)
        gate, leakage = project_to_qubit(propagate_numeric(p, env, TimeGrid.covering(env, steps)))
        dist = max(dist, gate_distance(gate, resonant_gate(p.axis)))
        leak = max(leak, leakage)
    return CheckResult("resonant gate law", dist < 1e-9 and leak < 1e-10, dist, 1e-9)


def check_offresonant() -> CheckResult:
    worst = 0.0
    for r in RATIOS:
        p = _grid_params(r)
        worst = max(worst, abs(extract_holonomy(propagate_square(p)).chi_est - chi_of(p.delta, 1.0)))
    return CheckResult("off-resonant chi", worst < 1e-9, worst, 1e-9)


def check_aa_phase(steps: int) -> CheckResult:
    worst = 0.0
    for r in RATIOS:
        p = _grid_params(r)
        diff = wrap_angle(numeric_aa_phase(p, steps) - (math.pi - chi_of(p.delta, 1.0)))
        worst = max(worst, abs(diff))
    return CheckResult("Aharonov-Anandan phase", worst < 1e-6, worst, 1e-6)


def check_identity_limit() -> CheckResult:
    p = _grid_params(100.0)
    ext = extract_holonomy(propagate_square(p))
    dist = gate_distance(ext.gate, np.eye(2))
    rel = abs((math.pi - ext.chi_est) / (2 * math.pi / 100.0**2) - 1)
    return CheckResult("identity limit", dist < 1e-6 and rel < 0.05, dist, 1e-6)


def check_composition(rng) -> CheckResult:
    prod = ang = 0.0
    for n, m in zip(random_axes(rng, 100), random_axes(rng, 100)):
        comp = compose_two(n, m)
        explicit = resonant_gate(m) @ resonant_gate(n)
        prod = max(prod, float(np.max(np.abs(comp.gate - explicit))))
        ang = max(ang, abs(su2_angle(comp.gate) - comp.angle))
    return CheckResult("composition law", prod < 1e-12 and ang < 1e-10, prod, 1e-12)


def check_audit(steps: int) -> CheckResult:
    worst = 0.0
    for r in RATIOS:
        p = _grid_params(r)
        env = square_envelope(p)
        worst = max(worst, geometric_audit(p, env, TimeGrid.covering(env, steps)))
    return CheckResult("square-pulse geometric purity", worst < 1e-9, worst, 1e-9)


def check_gaussian_audit(steps: int) -> CheckResult:
    p = LaserParams(math.pi / 2, 0.0, 1.0, 1.0)
    env = PulseEnvelope.gaussian(1.0, 5.0, 1.0, 10.0).scaled_to_area(math.pi)
    value = geometric_audit(p, env, TimeGrid.covering(env, steps))
    return CheckResult("gaussian pulse loses purity", value > 1e-3, value, 1e-3)


def check_commutator() -> CheckResult:
    p1 = LaserParams(math.pi / 2, 0.0)
    p2 = LaserParams(math.pi / 2, math.pi / 2)
    value = commutator_norm(p1, p2) / abs(connection_abb(p1) * connection_abb(p2))
    zero = max(commutator_norm(p1, p1), commutator_norm(LaserParams(0.0), LaserParams(math.pi)))
    return CheckResult("non-Abelian witness", value > 0.1 and zero < 1e-12, value, 0.1)


def check_synthesis(rng) -> CheckResult:
    worst = 0.0
    for angle in SYNTH_ANGLES:
        for axis in random_axes(rng, 20):
            target = RotationSpec(axis, angle)
            res = synthesize_single(target)
            ext = extract_holonomy(propagate_square(res.params))
            worst = max(worst, 1 - average_gate_fidelity(ext.gate, target.matrix()))
    return CheckResult("synthesis round trip", worst < 1e-9, worst, 1e-9)


def check_decomposition(rng) -> CheckResult:
    worst = 0.0
    for target in haar_su2(rng, 100):
        n, m = decompose_two_resonant(target)
        worst = max(worst, gate_distance(compose_two(n, m).gate, target))
    return CheckResult("two-pulse decomposition", worst < 1e-10, worst, 1e-10)


def check_gate_law() -> CheckResult:
    dist = phase = 0.0
    for r in (0.0, 0.25, -0.25, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0):
        for theta in THETAS:
            for phi in (0.0, math.pi / 3, math.pi):
                p = LaserParams(theta, phi, r, 1.0)
                gate = project_to_qubit(propagate_square(p)).gate
                dist = max(dist, gate_distance(gate, offres_gate(p.axis, chi_of(r, 1.0)).matrix))
                phase = max(phase, abs(wrap_angle(aa_phase(p) - math.pi + chi_of(r, 1.0))))
    return CheckResult("closed-form gate law", dist < 1e-9 and phase < 1e-10, dist, 1e-9)


def run_all(seed: int = 0, steps: int = 10_000) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return [
        check_resonant(steps),
        check_offresonant(),
        check_aa_phase(steps),
        check_identity_limit(),
        check_composition(rng),
        check_audit(steps),
        check_gaussian_audit(steps),
        check_commutator(),
        check_synthesis(rng),
        check_decomposition(rng),
        check_gate_law(),
    ]

