import numpy as np
import pytest

from grushin.geometry import Dimensions
from grushin.spectral import TorusGrid

DIMS11 = Dimensions(1, 1)


@pytest.fixture(scope="session")
def transform_grid():
    """Workhorse grid for transform tests: 128 x 128, cutoff 41."""
    return TorusGrid(
        dims=DIMS11,
        x1_halfwidth=16.0,
        n1_points=128,
        x2_period=2.0 * np.pi,
        n2_points=128,
        hermite_cutoff=41,
    )


@pytest.fixture(scope="session")
def plancherel_grid():
    """Grid resolving the spectral window [0.25, 4.25] exactly."""
    return TorusGrid(
        dims=DIMS11,
        x1_halfwidth=24.0,
        n1_points=256,
        x2_period=8.0 * np.pi,
        n2_points=64,
        hermite_cutoff=17,
    )


@pytest.fixture(scope="session")
def weighted_base_grid():
    """Base grid for the weighted Plancherel family: long period so base
    points out to |y1| = 8 keep their spectral content on the lattice."""
    return TorusGrid(
        dims=DIMS11,
        x1_halfwidth=72.0,
        n1_points=1024,
        x2_period=32.0 * np.pi,
        n2_points=256,
        hermite_cutoff=65,
    )


@pytest.fixture(scope="session")
def heat_grid():
    """Carrier grid for heat-diagonal sums: wide box and deep layer cutoff,
    point counts irrelevant because no field is synthesized."""
    return TorusGrid(
        dims=DIMS11,
        x1_halfwidth=344.0,
        n1_points=512,
        x2_period=16.0 * np.pi,
        n2_points=1024,
        hermite_cutoff=6401,
    )


@pytest.fixture(scope="session")
def gaussian_grid():
    """Field-resolving grid for heat kernel columns at t down to 1/16."""
    return TorusGrid(
        dims=DIMS11,
        x1_halfwidth=128.0,
        n1_points=1024,
        x2_period=8.0 * np.pi,
        n2_points=512,
        hermite_cutoff=1601,
    )


@pytest.fixture(scope="session")
def riesz_grid():
    """Grid resolving the spectral window [0, 64] for the cutoff sweeps."""
    return TorusGrid(
        dims=DIMS11,
        x1_halfwidth=64.0,
        n1_points=4096,
        x2_period=8.0 * np.pi,
        n2_points=512,
        hermite_cutoff=257,
    )
