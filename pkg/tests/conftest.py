import numpy as np
import pytest

from gamma2sphere.quadrature import gauss_z_rule, product_sphere_rule


@pytest.fixture(scope="session")
def zrule():
    return gauss_z_rule(64, 3)


@pytest.fixture(scope="session")
def sphere_rule():
    return product_sphere_rule(32, 64)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_sphere_points(rng, n, d):
    x = rng.standard_normal((n, d))
    return x / np.linalg.norm(x, axis=1)[:, None]
