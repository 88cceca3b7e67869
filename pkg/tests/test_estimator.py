import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from lambdaholo import HolonomicGateCompiler
from lambdaholo.errors import AngleOutOfRange


@pytest.fixture
def rotations(rng):
    axes = rng.normal(size=(12, 3))
    angles = rng.uniform(0.2, 2 * math.pi - 0.2, size=(12, 1))
    return np.hstack([axes, angles])


def test_params_and_clone():
    est = HolonomicGateCompiler(f0_amp=2.0)
    assert est.get_params() == {"f0_amp": 2.0, "max_detuning_ratio": 20.0}
    twin = clone(est).set_params(max_detuning_ratio=5.0)
    assert twin.max_detuning_ratio == 5.0 and est.max_detuning_ratio == 20.0


def test_not_fitted(rotations):
    with pytest.raises(NotFittedError):
        HolonomicGateCompiler().transform(rotations)


def test_transform_roundtrip(rotations):
    est = HolonomicGateCompiler(f0_amp=1.5).fit(rotations)
    params = est.transform(rotations)
    assert params.shape == (12, 5)
    assert np.all(params[:, 3] == 1.5)
    back = est.inverse_transform(params)
    axes = rotations[:, :3] / np.linalg.norm(rotations[:, :3], axis=1, keepdims=True)
    np.testing.assert_allclose(back[:, :3], axes, atol=1e-9)
    np.testing.assert_allclose(back[:, 3], rotations[:, 3], atol=1e-9)
    assert est.score(rotations) == pytest.approx(1.0, abs=1e-12)


def test_input_validation():
    est = HolonomicGateCompiler()
    with pytest.raises(ValueError):
        est.fit(np.ones((3, 3)))
    with pytest.raises(AngleOutOfRange):
        est.fit([[0, 0, 1, 0.0]])
    with pytest.raises(ValueError):
        est.fit([[0, 0, 0, 1.0]])
    with pytest.raises(ValueError):
        HolonomicGateCompiler(f0_amp=-1).fit([[0, 0, 1, 1.0]])


def test_rwa_flags():
    X = np.array([[1, 0, 0, math.pi], [1, 0, 0, 0.01]])
    est = HolonomicGateCompiler().fit(X)
    assert est.rwa_flags(X).tolist() == [False, True]


def test_fit_transform_in_pipeline():
    # degrees -> radians preprocessing composes with the compiler
    to_rad = FunctionTransformer(lambda X: np.hstack([X[:, :3], np.radians(X[:, 3:])]))
    pipe = make_pipeline(to_rad, HolonomicGateCompiler())
    out = pipe.fit_transform(np.array([[0.0, 0.0, 1.0, 180.0], [0.0, 1.0, 0.0, 90.0]]))
    assert out[0, 2] == 0.0
    assert out[1, 2] == pytest.approx(2 / math.sqrt(3))
