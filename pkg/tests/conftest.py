import numpy as np
import pytest

import lightscope as ls


@pytest.fixture(scope="session")
def config():
    return ls.validate(ls.ApparatusConfig())


@pytest.fixture(scope="session")
def grid(config):
    return ls.default_grid(config)


@pytest.fixture(scope="session")
def base_patterns(config, grid):
    """Slit patterns on the default grid; shared, the integrals dominate runtime."""
    return ls.no_photon_patterns(config, grid)


@pytest.fixture(scope="session")
def bare_amplitudes(config, grid):
    psi_l = ls.slit_amplitude(grid.positions, "L", None, config)
    psi_r = ls.slit_amplitude(grid.positions, "R", None, config)
    return psi_l, psi_r


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260826)
