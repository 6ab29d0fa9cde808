"""
Initialization file for qcorr.

This module exposes all sub-module imports to the module-level, making it easier to use the package's functionalities.
"""

# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .exceptions import (
    AsymmetricOperatorError,
    BoundaryAccessError,
    BudgetExceededError,
    ConfigError,
    ConvergenceError,
    GridCouplingError,
    GridMismatchError,
    IllConditionedError,
    InvalidFixtureError,
    SupportError,
    UnsupportedBasisError,
)

# noinspection PyUnresolvedReferences
from .lattice import (
    FieldGrid,
    LatticeConfiguration,
    ModelParams,
    QuarticPotential,
    TabulatedPotential,
    config_weight,
    default_phi_max,
    local_lagrangian,
    window_action,
)

# noinspection PyUnresolvedReferences
from .operators import (
    OperatorMatrix,
    SpectralDecomposition,
    build_function_of_Q,
    build_H,
    build_identity,
    build_P2,
    build_Q,
    build_R,
    commutator,
    heisenberg_transport,
    operator_distance,
    spectral,
)

# noinspection PyUnresolvedReferences
from .evolution import EvolutionChain, evolve, hamiltonian_consistency, invert_evolution, inverse_step_exponential, refine_grid, step_kernel

# noinspection PyUnresolvedReferences
from .states import StateVector, boundary_state, density_matrix, evolve_state, expect_density, expect_operator, inner, power_iteration

# noinspection PyUnresolvedReferences
from .observables import (
    DFwd,
    DSym,
    EquivalenceWitness,
    FormalOperator,
    LowEnergyBasis,
    ObservableExpr,
    Pow,
    classical_product,
    commutator_observable,
    eval_on_config,
    expect_observable,
    kinetic_square,
    parse_observable,
    quantum_product,
    standard_representative,
    time_ordered_image,
    to_heisenberg,
)

# noinspection PyUnresolvedReferences
from .oracle import ExteriorWeights, brute_expectation, brute_expectations, exterior_irrelevance_check

# noinspection PyUnresolvedReferences
from .config import ExperimentConfig, load_config, parse_config_text

# noinspection PyUnresolvedReferences
from .runners import AmbiguityRunner, CorrelationRunner, OracleCheckRunner, SpectrumRunner, build_data_filename
