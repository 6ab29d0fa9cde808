"""Classes and functions for transfer kernels, evolution operators and their consistency with the Hamiltonian."""

# License: BSD 3-clause

from .step_kernel import step_kernel, check_grid_coupling, coupling_ratio, max_spacing, refine_grid
from .evolve import evolve, invert_evolution, inverse_step_exponential, EvolutionChain, InverseEvolution
from .consistency import hamiltonian_consistency, ConvergenceReport
