import numpy as np
import pytest

from pairdisc import tic_statistic


@pytest.fixture(scope="session", autouse=True)
def warm_jit():
    # compile the grid-search kernels once so timed tests measure the
    # algorithm, not the JIT
    rng = np.random.default_rng(0)
    tic_statistic(rng.random(30), rng.random(30))
