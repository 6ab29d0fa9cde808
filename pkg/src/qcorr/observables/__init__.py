"""Local observables, their operator images and the quantum product."""

# License: BSD 3-clause

from .factors import EPS, ZSYM, DFwd, DSym, Pow, phi_symbol
from .expr import ObservableExpr, classical_product, coefficient_value, eval_on_config, kinetic_square
from .heisenberg import (
    EquivalenceWitness,
    LowEnergyBasis,
    expect_observable,
    schrodinger_operator,
    time_ordered_image,
    to_heisenberg,
    window_operator,
)
from .symbolic import FormalOperator, commutator_observable, normal_order, quantum_product, standard_representative
from .parser import parse_observable
