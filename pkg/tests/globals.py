"""Global variables and constants for unit tests."""

import numpy as np
import pytest

from qcorr.lattice import FieldGrid, ModelParams, QuarticPotential
from qcorr.oracle import ExteriorWeights

SEED = 12


@pytest.fixture
def harmonic_params():
    """Return a harmonic chain with mu2 = Z = 1 at epsilon = 0.2 on five interior sites."""
    return ModelParams(epsilon=0.2, potential=QuarticPotential(mu2=1.0, lam=0.0), z=1.0, n_sites=5)


@pytest.fixture
def small_grid():
    """Return a coarse symmetric grid for exact small-window checks."""
    return FieldGrid(n_points=6, phi_max=2.0)


@pytest.fixture
def random_models():
    """Return five random well-conditioned models with random positive exteriors on a 6-point grid."""
    rng = np.random.default_rng(SEED)
    grid = FieldGrid(n_points=6, phi_max=2.0)
    models = []
    for _ in range(5):
        epsilon = float(rng.choice([0.2, 0.5]))
        params = ModelParams(
            epsilon=epsilon,
            potential=QuarticPotential(mu2=float(rng.uniform(0.5, 1.5)), lam=float(rng.uniform(0.0, 0.5))),
            z=float(rng.uniform(1.0, 2.0)),
            n_sites=3,
        )
        lower, upper = rng.uniform(0.2, 1.2, size=(2, grid.n_points))
        models.append((params, ExteriorWeights(lower, upper)))
    return grid, models


@pytest.fixture(scope="module")
def harmonic_continuum():
    """Return a harmonic chain close to the continuum: epsilon = 0.02 on 240 points over [-6, 6]."""
    params = ModelParams(epsilon=0.02, potential=QuarticPotential(mu2=1.0, lam=0.0), z=1.0, n_sites=120)
    grid = FieldGrid(n_points=240, phi_max=6.0)
    return params, grid
