"""Classes and functions for boundary states, density matrices and expectation values."""

# License: BSD 3-clause

from .state_vector import StateVector, boundary_state, power_iteration, state_to_frame, PowerIterationResult
from .expectation import evolve_state, spectral_evolve_state, inner, expect_operator
from .density import DensityMatrix, density_matrix, expect_density, transport_density
