import math

import numpy as np
import pytest

SQRT2 = math.sqrt(2.0)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)


def interior_points(rng, n, r_max=1.3):
    """Random phase-space points strictly inside the 4-ball of radius sqrt(2)."""
    v = rng.standard_normal((n, 4))
    v /= np.linalg.norm(v, axis=1)[:, None]
    r = r_max * rng.random(n) ** 0.25
    return v * r[:, None]
