import numpy as np
import pytest

import psdolab as P


@pytest.fixture(scope="session")
def grid():
    return P.make_grid(1, 1024, 16.0)


@pytest.fixture(scope="session")
def grid_small():
    return P.make_grid(1, 256, 16.0)


@pytest.fixture(scope="session")
def lp(grid):
    return P.make_lp_family(grid)


@pytest.fixture(scope="session")
def bessel_op(grid, lp):
    sym = P.preset_symbol("bessel_order_m", m=-0.75)
    return P.make_operator(sym, grid, family=lp)


@pytest.fixture(scope="session")
def packet(grid):
    return P.sample(grid, lambda x: np.exp(-0.5 * (x - 2.0) ** 2) * np.exp(1j * 3.0 * x))


@pytest.fixture(scope="session")
def window(grid):
    return P.sample(grid, lambda x: np.cos(0.7 * x) * np.exp(-0.1 * x ** 2))
