import numpy as np
import pytest

from cayleykron.linalg import Tolerances


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def tol():
    return Tolerances()


def assert_close(a, b, atol):
    a, b = np.asarray(a), np.asarray(b)
    assert a.shape == b.shape
    dev = float(np.max(np.abs(a - b))) if a.size else 0.0
    assert dev <= atol, f"max deviation {dev:.3e} > {atol:.1e}"
