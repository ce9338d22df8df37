import os
import sys

import numpy as np
import pytest

# Add the repository root to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

os.environ.setdefault('GE_ENV', 'testing')


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def random_hermitian(rng):
    def make(n):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        return (a + a.conj().T) / 2
    return make
