import numpy as np
import pytest

from partial_qcm.verify import random_amplitudes, random_density, random_params, random_unitary


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_cases(n, seed=42):
    """(psi, rho, params, unitary) tuples drawn from one seeded generator."""
    g = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        psi = random_amplitudes(g)
        out.append((psi, random_density(g), random_params(g), random_unitary(g)))
    return out
