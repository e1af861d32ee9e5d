import numpy as np
import pytest

from qotto import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # trigger any JIT compilation before timed tests run
    w = np.array([1.0, 4.0, 9.0])
    kernels.log_z_and_mean(w, 0.5)
    kernels.gibbs_weights(w, 0.5)
    kernels.multiset_sums(w, 2, 6)
    kernels.subset_sums(w, 2, 3)
