import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings

from lambdaholo.errors import GridTooCoarse
from lambdaholo.holonomy import resonant_gate, square_generator_commutator
from lambdaholo.linalg import PROJ_E, gate_distance, project_to_qubit, unitarity_defect
from lambdaholo.model import LaserParams, PulseEnvelope, dark_bright, generator
from lambdaholo.propagator import (
    TimeGrid,
    cyclic_period,
    evolve_square,
    free_evolution,
    propagate_numeric,
    propagate_square,
    square_envelope,
    subspace_return_error,
)

from conftest import amplitudes, detunings, phis, thetas


def test_cyclic_period_examples():
    assert cyclic_period(0.0, 1.0) == pytest.approx(math.pi)
    assert cyclic_period(0.0, 2.0) == pytest.approx(math.pi / 2)
    assert cyclic_period(2.0, 1.0) == pytest.approx(2 * math.pi / math.sqrt(8))
    assert cyclic_period(2.0, 1.0) == pytest.approx(2.221441, abs=1e-6)


def test_resonant_period_has_pulse_area_pi():
    for f0 in (0.3, 1.0, 2.5):
        assert f0 * cyclic_period(0.0, f0) == pytest.approx(math.pi)


def test_propagate_square_sigma_x():
    gate, leakage = project_to_qubit(propagate_square(LaserParams(math.pi / 2, 0.0, 0.0, 1.0)))
    assert gate_distance(gate, np.array([[0, 1], [1, 0]])) < 1e-12
    assert leakage < 1e-12


def test_propagate_square_sigma_z():
    gate, _ = project_to_qubit(propagate_square(LaserParams(0.0, 0.0, 0.0, 1.0)))
    assert gate_distance(gate, np.diag([1, -1])) < 1e-12


def test_propagate_square_off_resonant_against_expm_oracle():
    p = LaserParams(math.pi / 2, 0.0, 2.0, 1.0)
    u = propagate_square(p)
    oracle = scipy.linalg.expm(-1j * cyclic_period(2.0, 1.0) * generator(p))
    np.testing.assert_allclose(u, oracle, atol=1e-12)
    d, b = (v[:2] for v in dark_bright(p.theta, p.phi))
    expected = np.outer(d, d.conj()) - np.exp(-1j * math.pi / math.sqrt(2)) * np.outer(b, b.conj())
    np.testing.assert_allclose(u[:2, :2], expected, atol=1e-12)


def test_numeric_single_step_equals_closed_form():
    for p in (LaserParams(0.7, 1.1, 0.0, 1.0), LaserParams(2.0, 4.0, -3.0, 0.5)):
        env = square_envelope(p)
        u = propagate_numeric(p, env, TimeGrid(0.0, env.duration, 1))
        assert np.max(np.abs(u - propagate_square(p))) < 1e-14


def test_numeric_fine_grid_equals_closed_form():
    p = LaserParams(1.3, 0.4, 1.7, 1.0)
    env = square_envelope(p)
    u = propagate_numeric(p, env, TimeGrid(0.0, env.duration, 10_000))
    assert np.max(np.abs(u - propagate_square(p))) < 1e-10


def test_gaussian_resonant_pulse_gives_n_sigma():
    p = LaserParams(math.pi / 3, 2.0, 0.0, 1.0)
    env = PulseEnvelope.gaussian(1.0, 5.0, 1.0, 10.0).scaled_to_area(math.pi)
    u = propagate_numeric(p, env)
    gate, leakage = project_to_qubit(u)
    assert gate_distance(gate, resonant_gate(p.axis)) < 1e-6
    assert leakage < 1e-6


def test_grid_too_coarse():
    p = LaserParams(1.0, 0.0, 1.0, 1.0)
    env = PulseEnvelope.gaussian(1.0, 5.0, 1.0, 10.0)
    with pytest.raises(GridTooCoarse):
        propagate_numeric(p, env, TimeGrid(0.0, 10.0, 8), tol=1e-9)
    u = propagate_numeric(p, env, TimeGrid(0.0, 10.0, 4000), tol=1e-5)
    assert unitarity_defect(u) < 1e-10


def test_timegrid_validation():
    with pytest.raises(ValueError):
        TimeGrid(1.0, 1.0, 10)
    with pytest.raises(ValueError):
        TimeGrid(0.0, 1.0, 0)


def test_subspace_return_error_examples():
    assert subspace_return_error(np.eye(3)) == 0
    p = LaserParams(math.pi / 2, 0.0, 0.0, 1.0)
    assert subspace_return_error(propagate_square(p)) < 1e-10
    tau = cyclic_period(0.0, 1.0)
    half = scipy.linalg.expm(-0.5j * tau * generator(p))
    assert subspace_return_error(evolve_square(p, tau / 2)) == pytest.approx(subspace_return_error(half), abs=1e-12)
    assert subspace_return_error(evolve_square(p, tau / 2)) > 0.4


def test_second_order_convergence():
    # square pulse with perturbed samples; step counts aligned with the 10 sample intervals
    base = np.linspace(0, 1, 11)
    samples = 1.0 + 0.3 * np.sin(2 * math.pi * base) + 0.1 * np.cos(6 * math.pi * base)
    env = PulseEnvelope.tabulated(samples, 3.0)
    p = LaserParams(1.1, 0.6, 1.4, 1.0)
    ref = propagate_numeric(p, env, TimeGrid(0.0, 3.0, 20480))
    errs = [np.max(np.abs(propagate_numeric(p, env, TimeGrid(0.0, 3.0, n)) - ref)) for n in (40, 80, 160, 320)]
    for coarse, fine in zip(errs, errs[1:]):
        assert 3.5 < coarse / fine < 4.5


@settings(max_examples=50, deadline=None)
@given(thetas, phis, detunings, amplitudes)
def test_square_propagator_commutes_with_generator(theta, phi, delta, f0):
    p = LaserParams(theta, phi, delta, f0)
    assert square_generator_commutator(p, cyclic_period(delta, f0)) < 1e-10 * max(1.0, abs(delta), f0)


@pytest.mark.parametrize("t0,t1", [(-0.8, 0.5), (-2.0, 1.3), (-0.1, 3.0)])
def test_factorization_around_square_pulse(t0, t1):
    p = LaserParams(1.0, 2.0, 1.5, 1.0)
    env = square_envelope(p)
    tau = env.duration
    t1 = tau + t1
    numeric = propagate_numeric(p, env, TimeGrid(t0, t1, 3))
    closed = free_evolution(p.delta, t1 - tau) @ propagate_square(p) @ free_evolution(p.delta, -t0)
    direct = (
        scipy.linalg.expm(-1j * (t1 - tau) * p.delta * PROJ_E)
        @ scipy.linalg.expm(-1j * tau * generator(p))
        @ scipy.linalg.expm(1j * t0 * p.delta * PROJ_E)
    )
    assert np.max(np.abs(numeric - closed)) < 1e-10
    assert np.max(np.abs(direct - closed)) < 1e-10


@pytest.mark.parametrize("delta,t", [(0.0, 1.0), (3.0, -2.5), (-7.0, 10.0)])
def test_off_pulse_factor_is_trivial_on_qubit(delta, t):
    gate = free_evolution(delta, t)[:2, :2]
    np.testing.assert_array_equal(gate, np.eye(2))
