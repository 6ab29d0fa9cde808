"""Unit tests for evolution/evolve.py and evolution/consistency.py"""

# License: BSD 3-clause

import numpy as np
import pytest

from qcorr.exceptions import IllConditionedError
from qcorr.evolution import EvolutionChain, evolve, hamiltonian_consistency, inverse_step_exponential, invert_evolution, step_kernel
from qcorr.lattice import FieldGrid, ModelParams, QuarticPotential
from qcorr.operators import OperatorMatrix, build_H, spectral
from tests.globals import harmonic_params, small_grid


@pytest.fixture
def conditioned():
    """Return a model and grid whose one-step evolution inverts cleanly."""
    params = ModelParams(epsilon=0.2, potential=QuarticPotential(mu2=1.0, lam=0.1), z=1.0, n_sites=3)
    return params, FieldGrid(n_points=21, phi_max=3.0)


class TestEvolve:

    def test_zero_steps_is_identity(self, harmonic_params, small_grid):
        assert np.array_equal(evolve(2, 2, harmonic_params, small_grid).entries, np.eye(small_grid.n_points))

    def test_composition(self, harmonic_params, small_grid):
        u_03 = evolve(0, 3, harmonic_params, small_grid)
        u_02, u_23 = evolve(0, 2, harmonic_params, small_grid), evolve(2, 3, harmonic_params, small_grid)
        assert np.allclose(u_03.entries, (u_23 @ u_02).entries, rtol=1e-12, atol=0.0)

    def test_chain_orders_steps(self):
        grid = FieldGrid(n_points=5, phi_max=1.0)
        params = ModelParams(epsilon=0.2, potential=[QuarticPotential(m) for m in (1.0, 2.0, 3.0, 4.0)], n_sites=2)
        chain = EvolutionChain(params, grid)
        expected = step_kernel(params, grid, 2).entries @ step_kernel(params, grid, 1).entries
        assert np.allclose(chain.forward(1, 3).entries, expected)

    def test_backward_forward_raises(self, harmonic_params, small_grid):
        with pytest.raises(ValueError, match="to_site >= from_site"):
            EvolutionChain(harmonic_params, small_grid).forward(3, 1)
        with pytest.raises(ValueError, match="window"):
            evolve(0, 9, harmonic_params, small_grid)


class TestInverseEvolution:

    def test_one_step_inverse(self, conditioned):
        params, grid = conditioned
        result = invert_evolution(step_kernel(params, grid))
        assert result.residual <= 1e-8
        assert result.condition > 1.0
        assert np.allclose((result.operator @ step_kernel(params, grid)).entries, np.eye(grid.n_points), atol=1e-8)

    def test_transport_round_trip(self, conditioned):
        params, grid = conditioned
        chain = EvolutionChain(params, grid)
        assert np.allclose((chain.transport(1, 2) @ chain.transport(2, 1)).entries, np.eye(grid.n_points), atol=1e-8)
        assert chain.transport(1, 2) is chain.inverse(1, 2).operator

    def test_singular_operator_raises(self):
        grid = FieldGrid(n_points=5, phi_max=1.0)
        with pytest.raises(IllConditionedError) as exc_info:
            invert_evolution(OperatorMatrix(np.ones((5, 5)), grid))
        assert exc_info.value.residual == float("inf")

    def test_strict_residual_raises(self, conditioned):
        params, grid = conditioned
        with pytest.raises(IllConditionedError) as exc_info:
            invert_evolution(step_kernel(params, grid), max_residual=0.0)
        assert exc_info.value.condition is not None

    def test_inverse_step_exponential(self, conditioned):
        params, grid = conditioned
        inverse = inverse_step_exponential(params, grid)
        lowest = np.linalg.eigvalsh(inverse.entries)[0]
        assert inverse.is_symmetric()
        assert lowest == pytest.approx(np.exp(params.epsilon * spectral(build_H(params, grid)).eigenvalues[0]), rel=1e-10)


class TestHamiltonianConsistency:

    def test_first_order_convergence(self):
        params = ModelParams(epsilon=0.1, potential=QuarticPotential(mu2=2.0), z=1.0, n_sites=2)
        report = hamiltonian_consistency(params, FieldGrid(n_points=101, phi_max=6.0), [0.1, 0.05, 0.025], levels=2)
        assert report.is_decreasing
        assert all(1.5 <= ratio <= 2.5 for ratio in report.ratios)
        assert all(ratio <= 1.0 for ratio in report.coupling_ratios)

    def test_transfer_energy_tracks_hamiltonian(self):
        params = ModelParams(epsilon=0.1, potential=QuarticPotential(mu2=1.0), z=1.0, n_sites=2)
        report = hamiltonian_consistency(params, FieldGrid(n_points=101, phi_max=6.0), [0.1, 0.05], levels=1)
        for transfer, hamiltonian in zip(report.transfer_energies, report.hamiltonian_energies):
            assert transfer == pytest.approx(hamiltonian, abs=1e-2)
        frame = report.to_frame()
        assert list(frame.columns) == ["epsilon", "n_points", "coupling_ratio", "deviation", "E_0_transfer", "E_0"]
        assert len(frame) == 2

    @pytest.mark.parametrize("eps_sequence", [[], [0.05, 0.1], [0.1, -0.05]])
    def test_invalid_sequences(self, harmonic_params, eps_sequence):
        with pytest.raises(ValueError):
            hamiltonian_consistency(harmonic_params, FieldGrid(n_points=101, phi_max=6.0), eps_sequence)

    def test_invalid_levels(self, harmonic_params, small_grid):
        with pytest.raises(ValueError, match="levels"):
            hamiltonian_consistency(harmonic_params, small_grid, [0.1], levels=7)
