import numpy as np
import pytest

from egl.kernel import ToleranceProfile


@pytest.fixture
def prof():
    return ToleranceProfile()


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(key=20240613))
