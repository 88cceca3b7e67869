"""scikit-learn style wrapper around single-pulse gate synthesis.

Rows of rotations are ``[axis_x, axis_y, axis_z, angle]``; rows of pulse
parameters are ``[theta, phi, delta, f0_amp, tau]``.
"""
from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .errors import AngleOutOfRange
from .holonomy import extract_holonomy
from .model import LaserParams
from .propagator import propagate_square
from .synthesis import (
    RWA_MAX_DETUNING_RATIO,
    RotationSpec,
    average_gate_fidelity,
    rwa_warning,
    synthesize_single,
)


def check_rotations(X) -> np.ndarray:
    X = check_array(X, dtype=np.float64)
    if X.shape[1] != 4:
        raise ValueError(f"rotation rows need 4 columns (axis_x, axis_y, axis_z, angle), got {X.shape[1]}")
    norms = np.linalg.norm(X[:, :3], axis=1)
    if np.any(norms == 0):
        raise ValueError("rotation axes must be nonzero")
    bad = (X[:, 3] <= 0) | (X[:, 3] >= 2 * math.pi)
    if np.any(bad):
        raise AngleOutOfRange(f"angles must lie in (0, 2pi); row {int(np.argmax(bad))} does not")
    return X


def check_pulse_params(P) -> np.ndarray:
    P = check_array(P, dtype=np.float64)
    if P.shape[1] not in (4, 5):
        raise ValueError(f"pulse rows need theta, phi, delta, f0_amp[, tau]; got {P.shape[1]} columns")
    return P


class HolonomicGateCompiler(TransformerMixin, BaseEstimator):
    """Compile single-qubit rotations into one off-resonant pulse pair each.

    Parameters
    ----------
    f0_amp : float
        Square-pulse amplitude shared by all compiled pulses.
    max_detuning_ratio : float
        |delta|/F0 above which :meth:`rwa_flags` marks a pulse as suspect.
    """

    def __init__(self, f0_amp=1.0, max_detuning_ratio=RWA_MAX_DETUNING_RATIO):
        self.f0_amp = f0_amp
        self.max_detuning_ratio = max_detuning_ratio

    def fit(self, X, y=None):
        if not self.f0_amp > 0:
            raise ValueError(f"f0_amp must be > 0, got {self.f0_amp}")
        check_rotations(X)
        self.n_features_in_ = 4
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = check_rotations(X)
        out = np.empty((X.shape[0], 5))
        for i, row in enumerate(X):
            res = synthesize_single(RotationSpec(row[:3], row[3]), self.f0_amp, max_ratio=self.max_detuning_ratio)
            p = res.params
            out[i] = (p.theta, p.phi, p.delta, p.f0_amp, res.tau)
        return out

    def inverse_transform(self, P):
        """Simulate each pulse and read back its rotation axis and angle."""
        check_is_fitted(self)
        P = check_pulse_params(P)
        out = np.empty((P.shape[0], 4))
        for i, row in enumerate(P):
            p = LaserParams(*row[:4])
            ext = extract_holonomy(propagate_square(p), axis=p.axis)
            out[i, :3] = ext.axis
            out[i, 3] = math.pi - ext.chi_est
        return out

    def rwa_flags(self, X):
        params = self.transform(X)
        return np.array(
            [rwa_warning(LaserParams(*row[:4]), max_ratio=self.max_detuning_ratio) is not None for row in params]
        )

    def score(self, X, y=None):
        """Mean average gate fidelity of compiled-then-simulated rotations."""
        X = check_rotations(X)
        back = self.inverse_transform(self.transform(X))
        fids = [
            average_gate_fidelity(RotationSpec(a[:3], a[3]).matrix(), RotationSpec(b[:3], b[3]).matrix())
            for a, b in zip(X, back)
        ]
        return float(np.mean(fids))
