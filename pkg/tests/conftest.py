import numpy as np
import pytest

import symprod as sp


@pytest.fixture(scope="session")
def unit_disc():
    return sp.disc(0, 1)


@pytest.fixture(scope="session")
def disc_grid(unit_disc):
    return sp.sample_boundary(unit_disc, 256)


@pytest.fixture(scope="session")
def annulus_domain():
    return sp.annulus(0, 0.3, 1.0)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
