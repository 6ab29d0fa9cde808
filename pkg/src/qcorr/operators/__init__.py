"""Classes and functions for grid-discretised operators and their algebra."""

# License: BSD 3-clause

from .operator_matrix import OperatorMatrix, SpectralDecomposition
from .builders import build_identity, build_Q, build_P2, build_R, build_H, build_function_of_Q
from .algebra import commutator, spectral, heisenberg_transport, transport_residual, operator_distance
