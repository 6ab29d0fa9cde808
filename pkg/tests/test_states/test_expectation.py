"""Unit tests for states/expectation.py and states/density.py"""

# License: BSD 3-clause

import numpy as np
import pytest

from qcorr.evolution import EvolutionChain, step_kernel
from qcorr.exceptions import GridMismatchError
from qcorr.lattice import FieldGrid, ModelParams, QuarticPotential
from qcorr.operators import OperatorMatrix, build_Q, spectral
from qcorr.states import (
    StateVector,
    boundary_state,
    density_matrix,
    evolve_state,
    expect_density,
    expect_operator,
    inner,
    spectral_evolve_state,
    transport_density,
)
from tests.globals import SEED, harmonic_params, small_grid


@pytest.fixture
def random_pair(small_grid):
    """Return a random positive bra and ket located at site 2."""
    rng = np.random.default_rng(SEED)
    bra = StateVector(rng.uniform(0.2, 1.2, size=6), 2, "bra", small_grid)
    ket = StateVector(rng.uniform(0.2, 1.2, size=6), 2, "ket", small_grid)
    return bra, ket


class TestEvolveState:

    def test_ket_moves_forward(self, harmonic_params, small_grid):
        ket = boundary_state("gaussian", small_grid, harmonic_params)
        moved = evolve_state(ket, 3, harmonic_params, small_grid)
        assert moved.tau_site == 3
        assert np.allclose(moved.values, EvolutionChain(harmonic_params, small_grid).forward(0, 3) @ ket.values)

    def test_bra_moves_backward(self, harmonic_params, small_grid):
        bra = boundary_state("gaussian", small_grid, harmonic_params, side="bra")
        moved = evolve_state(bra, 2, harmonic_params, small_grid)
        u = EvolutionChain(harmonic_params, small_grid).forward(2, harmonic_params.last_site)
        assert np.allclose(moved.values, u.entries.T @ bra.values)

    def test_same_site_is_unchanged(self, harmonic_params, small_grid):
        ket = boundary_state("uniform", small_grid, harmonic_params, site=2)
        assert evolve_state(ket, 2, harmonic_params, small_grid) is ket

    def test_bra_moves_forward_with_inverse(self):
        params = ModelParams(epsilon=0.2, potential=QuarticPotential(mu2=1.0), n_sites=2)
        grid = FieldGrid(n_points=21, phi_max=3.0)
        bra = StateVector(np.exp(-grid.points**2), 1, "bra", grid)
        there = evolve_state(bra, 2, params, grid)
        back = evolve_state(there, 1, params, grid)
        assert np.allclose(back.values, bra.values, atol=1e-8)

    def test_grid_mismatch_raises(self, harmonic_params, small_grid):
        ket = boundary_state("uniform", small_grid, harmonic_params)
        with pytest.raises(GridMismatchError):
            evolve_state(ket, 2, harmonic_params, FieldGrid(n_points=7, phi_max=2.0))

    def test_spectral_evolution_matches_products(self, harmonic_params, small_grid):
        ket = boundary_state("gaussian", small_grid, harmonic_params)
        decomposition = spectral(step_kernel(harmonic_params, small_grid))
        by_modes = spectral_evolve_state(ket, 3, decomposition)
        by_products = evolve_state(ket, 3, harmonic_params, small_grid)
        assert np.allclose(by_modes.values, by_products.values, rtol=1e-10, atol=1e-14)


class TestExpectation:

    def test_inner_example(self):
        grid = FieldGrid(n_points=5, phi_max=1.0)
        assert inner(StateVector(np.ones(5), 0, "bra", grid), StateVector(np.ones(5), 0, "ket", grid)) == pytest.approx(2.5)

    def test_ratio_is_scale_invariant(self, random_pair, small_grid):
        bra, ket = random_pair
        q = build_Q(small_grid)
        value = expect_operator(bra, q, ket)
        assert expect_operator(bra.scaled(7.0), q, ket.scaled(0.01)) == pytest.approx(value, rel=1e-12)

    def test_pair_checks(self, random_pair, small_grid):
        bra, ket = random_pair
        with pytest.raises(ValueError, match="Expected a bra and a ket"):
            inner(ket, bra)
        with pytest.raises(ValueError, match="same site"):
            inner(bra, ket.with_values(ket.values, tau_site=3))
        with pytest.raises(ValueError, match="zero inner product"):
            values = np.zeros(6)
            values[0] = 1.0
            other = np.zeros(6)
            other[1] = 1.0
            expect_operator(StateVector(values, 2, "bra", small_grid), build_Q(small_grid), StateVector(other, 2, "ket", small_grid))


class TestDensityMatrix:

    def test_trace_rank_and_expectation(self, random_pair, small_grid):
        bra, ket = random_pair
        rho = density_matrix(bra, ket)
        q = build_Q(small_grid)
        assert rho.trace() == pytest.approx(1.0)
        assert rho.rank() == 1
        assert expect_density(rho, q) == pytest.approx(expect_operator(bra, q, ket), rel=1e-12)

    def test_transport_keeps_trace(self, random_pair, harmonic_params, small_grid):
        bra, ket = random_pair
        u = step_kernel(harmonic_params, small_grid, 2)
        u_inv = OperatorMatrix(np.linalg.inv(u.entries), small_grid)
        moved = transport_density(density_matrix(bra, ket), u, u_inv, 3)
        assert moved.tau_site == 3
        assert moved.trace() == pytest.approx(1.0, rel=1e-8)

    def test_transport_moves_expectations(self, random_pair, harmonic_params, small_grid):
        bra, ket = random_pair
        u = step_kernel(harmonic_params, small_grid, 2)
        u_inv = OperatorMatrix(np.linalg.inv(u.entries), small_grid)
        rho = density_matrix(bra, ket)
        moved = transport_density(rho, u, u_inv, 3)
        q = build_Q(small_grid).entries
        for entries in (q, q @ q, q @ u.entries):
            a = OperatorMatrix(entries, small_grid)
            pulled_back = OperatorMatrix(u_inv.entries @ entries @ u.entries, small_grid)
            assert expect_density(moved, a) == pytest.approx(expect_density(rho, pulled_back), rel=1e-8, abs=1e-10)

    def test_grid_mismatch_raises(self, random_pair):
        bra, ket = random_pair
        with pytest.raises(GridMismatchError):
            expect_density(density_matrix(bra, ket), build_Q(FieldGrid(n_points=6, phi_max=3.0)))


class TestStationarity:

    @staticmethod
    def moved_expectation(bra, ket, site, params, grid, op):
        return expect_operator(evolve_state(bra, site, params, grid), op, evolve_state(ket, site, params, grid))

    def test_ground_states_are_stationary(self, harmonic_params, small_grid):
        bra = boundary_state("ground", small_grid, harmonic_params, side="bra")
        ket = boundary_state("ground", small_grid, harmonic_params)
        q2 = build_Q(small_grid) @ build_Q(small_grid)
        values = [self.moved_expectation(bra, ket, site, harmonic_params, small_grid, q2) for site in range(1, 6)]
        assert values == pytest.approx([values[0]] * 5, rel=1e-8)

    def test_shifted_ket_is_not_stationary(self, harmonic_params, small_grid):
        bra = boundary_state("uniform", small_grid, harmonic_params, side="bra")
        ket = boundary_state("gaussian", small_grid, harmonic_params, width=0.4, center=1.2)
        q = build_Q(small_grid)
        low = self.moved_expectation(bra, ket, 1, harmonic_params, small_grid, q)
        high = self.moved_expectation(bra, ket, 4, harmonic_params, small_grid, q)
        assert low > 0
        assert abs(low - high) > 1e-3
