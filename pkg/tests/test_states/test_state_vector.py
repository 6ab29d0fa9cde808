"""Unit tests for states/state_vector.py"""

# License: BSD 3-clause

import numpy as np
import pytest

from qcorr.evolution import step_kernel
from qcorr.exceptions import ConvergenceError
from qcorr.lattice import FieldGrid
from qcorr.states import StateVector, boundary_state, power_iteration, state_to_frame
from tests.globals import harmonic_params, small_grid


class TestStateVector:

    def test_validation(self, small_grid):
        with pytest.raises(ValueError, match="FieldGrid"):
            StateVector(np.ones(6), 0)
        with pytest.raises(ValueError, match="side"):
            StateVector(np.ones(6), 0, "both", small_grid)
        with pytest.raises(ValueError, match="shape"):
            StateVector(np.ones(5), 0, "ket", small_grid)
        with pytest.raises(ValueError, match="finite"):
            StateVector(np.full(6, np.inf), 0, "ket", small_grid)
        with pytest.raises(ValueError, match="vanish"):
            StateVector(np.zeros(6), 0, "ket", small_grid)

    def test_scaling(self, small_grid):
        state = StateVector(np.arange(1.0, 7.0), 2, "bra", small_grid)
        assert state.normalized().values.max() == 1.0
        assert np.allclose(state.scaled(2.0).values, 2.0 * state.values)
        assert state.scaled(2.0).tau_site == 2 and state.scaled(2.0).side == "bra"
        assert state.is_positive


class TestPowerIteration:

    def test_dominant_pair(self):
        result = power_iteration(np.diag([1.0, 3.0, 2.0]))
        assert result.eigenvalue == pytest.approx(3.0, rel=1e-10)
        assert np.allclose(result.vector, [0.0, 1.0, 0.0], atol=1e-10)
        assert result.residual <= 1e-12

    def test_iteration_cap_raises(self):
        with pytest.raises(ConvergenceError):
            power_iteration(np.diag([1.0, 3.0, 2.0]), max_iter=1)


class TestBoundaryState:

    def test_uniform_and_gaussian(self, harmonic_params, small_grid):
        uniform = boundary_state("uniform", small_grid, harmonic_params)
        assert np.array_equal(uniform.values, np.ones(6))
        assert (uniform.side, uniform.tau_site) == ("ket", harmonic_params.first_site)

        gaussian = boundary_state("gaussian", small_grid, harmonic_params, side="bra", width=0.5, center=0.4)
        assert gaussian.tau_site == harmonic_params.last_site
        assert np.allclose(gaussian.values, np.exp(-0.5 * ((small_grid.points - 0.4) / 0.5) ** 2))

    def test_ground_is_dominant_eigenvector(self, harmonic_params, small_grid):
        state = boundary_state("ground", small_grid, harmonic_params, site=2)
        kernel = step_kernel(harmonic_params, small_grid, 2).entries
        eigenvalue = np.linalg.eigvalsh(kernel)[-1]
        assert state.is_positive
        assert np.max(state.values) == pytest.approx(1.0)
        assert np.allclose(kernel @ state.values, eigenvalue * state.values, atol=1e-10)

    def test_ground_bra_at_last_site(self, harmonic_params, small_grid):
        bra = boundary_state("ground", small_grid, harmonic_params, side="bra")
        ket = boundary_state("ground", small_grid, harmonic_params, site=harmonic_params.last_site)
        assert bra.tau_site == ket.tau_site == harmonic_params.last_site
        assert np.allclose(bra.values, ket.values, atol=1e-10)

    def test_custom(self, harmonic_params, small_grid):
        values = np.linspace(0.0, 1.0, 6)
        assert np.array_equal(boundary_state("custom", small_grid, harmonic_params, values=values).values, values)
        with pytest.raises(ValueError, match="non-negative"):
            boundary_state("custom", small_grid, harmonic_params, values=-values)
        with pytest.raises(ValueError, match="explicit values"):
            boundary_state("custom", small_grid, harmonic_params)

    def test_invalid_requests(self, harmonic_params, small_grid):
        with pytest.raises(ValueError, match="kind"):
            boundary_state("thermal", small_grid, harmonic_params)
        with pytest.raises(ValueError, match="width"):
            boundary_state("gaussian", small_grid, harmonic_params, width=0.0)
        with pytest.raises(ValueError, match="window"):
            boundary_state("uniform", small_grid, harmonic_params, site=99)

    def test_state_to_frame(self, harmonic_params):
        grid = FieldGrid(n_points=3, phi_max=1.0)
        frame = state_to_frame(boundary_state("uniform", grid, harmonic_params))
        assert list(frame.columns) == ["phi", "amplitude"]
        assert frame["phi"].tolist() == [-1.0, 0.0, 1.0]
