import numpy as np
import pytest

from arcalc.linalg import PrimeField


@pytest.fixture
def F():
    return PrimeField()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
