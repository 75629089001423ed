import numpy as np
import pytest

import opnorm_lab as ol


@pytest.fixture(scope="session")
def quad():
    return ol.QuadConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
