"""Functions for building the elementary grid operators Q, P^2, R and the Hamiltonian."""

# License: BSD 3-clause

from typing import Callable

import numpy as np

from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams
from qcorr.operators.operator_matrix import OperatorMatrix


def build_identity(grid: FieldGrid) -> OperatorMatrix:
    """Identity operator, the discrete delta(phi2 - phi1)."""
    return OperatorMatrix(np.eye(grid.n_points), grid, "1")


def build_Q(grid: FieldGrid) -> OperatorMatrix:
    """
    Field operator: multiplication by phi.

    Examples
    --------
    >>> build_Q(FieldGrid(n_points=3, phi_max=1.0)).entries
    array([[-1.,  0.,  0.],
           [ 0.,  0.,  0.],
           [ 0.,  0.,  1.]])
    """
    return OperatorMatrix(np.diag(grid.points), grid, "Q")


def build_function_of_Q(func: Callable[[np.ndarray], np.ndarray], grid: FieldGrid, label: str = "f(Q)") -> OperatorMatrix:
    """Multiplication by ``func(phi)``."""
    return OperatorMatrix(np.diag(np.asarray(func(grid.points), dtype=float)), grid, label)


def build_P2(grid: FieldGrid) -> OperatorMatrix:
    """
    Negative second derivative ``-d^2/dphi^2`` as the compact three-point stencil with Dirichlet closure.

    The matrix is symmetric and positive definite.
    """
    n, h = grid.n_points, grid.spacing
    entries = (2.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)) / h**2
    return OperatorMatrix(entries, grid, "P2")


def build_R(grid: FieldGrid) -> OperatorMatrix:
    """
    First derivative ``d/dphi`` as the central difference with Dirichlet closure.

    The central stencil makes ``[P2, Q] = -2 R`` an exact grid identity. The matrix is antisymmetric.
    """
    n, h = grid.n_points, grid.spacing
    entries = (np.eye(n, k=1) - np.eye(n, k=-1)) / (2.0 * h)
    return OperatorMatrix(entries, grid, "R")


def build_H(params: ModelParams, grid: FieldGrid, site: int | None = None) -> OperatorMatrix:
    """
    Hamiltonian ``V(Q) + P2 / (2 Z)`` with the potential and kinetic coefficient of one site.

    Parameters
    ----------
    params : ModelParams
        Model parameters.
    grid : FieldGrid
        Field grid.
    site : int | None, default=None
        Site whose coefficients are used. Defaults to the reference (centre) site.

    Returns
    -------
    OperatorMatrix
        The symmetric Hamiltonian.
    """
    site = params.center_site if site is None else site
    z = params.z_at(site)
    potential = np.asarray(params.potential_at(site)(grid.points), dtype=float)
    entries = np.diag(potential) + build_P2(grid).entries / (2.0 * z)
    return OperatorMatrix(entries, grid, "H")
