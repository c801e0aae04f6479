import pathlib
import sys

import numpy as np
import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

EPS_GRID = [round(0.05 * k, 2) for k in range(21)]


@pytest.fixture
def eps_grid():
    return EPS_GRID


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
