import math

import numpy as np
import pytest
from hypothesis import strategies as st

finite = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False, allow_infinity=False)
thetas = st.floats(min_value=0.0, max_value=math.pi)
phis = st.floats(min_value=0.0, max_value=2 * math.pi, exclude_max=True)
detunings = st.floats(min_value=-20.0, max_value=20.0)
amplitudes = st.floats(min_value=0.05, max_value=5.0)


@st.composite
def hermitians(draw, n=3):
    re = np.array(draw(st.lists(finite, min_size=n * n, max_size=n * n))).reshape(n, n)
    im = np.array(draw(st.lists(finite, min_size=n * n, max_size=n * n))).reshape(n, n)
    a = re + 1j * im
    return 0.5 * (a + a.conj().T)


@pytest.fixture
def rng():
    return np.random.default_rng(20121035)


def haar_unitary(rng, n=2):
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(RESULTS):
        passed, detail = RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
