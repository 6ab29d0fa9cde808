"""Functions for commutators, spectral decompositions and similarity transport of grid operators."""

# License: BSD 3-clause

import logging

import numpy as np
from scipy.linalg import eigh

from qcorr.exceptions import AsymmetricOperatorError, IllConditionedError
from qcorr.operators.operator_matrix import OperatorMatrix, SpectralDecomposition


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """
    Commutator ``AB - BA``.

    Raises
    ------
    GridMismatchError
        If the operators act on different grids.
    """
    a.check_grid(b)
    return OperatorMatrix(a.entries @ b.entries - b.entries @ a.entries, a.grid, f"[{a.label},{b.label}]")


def spectral(a: OperatorMatrix, tol: float = 1e-10) -> SpectralDecomposition:
    """
    Full real eigensystem of a symmetric operator, eigenvalues ascending.

    Parameters
    ----------
    a : OperatorMatrix
        Operator to decompose.
    tol : float, default=1e-10
        Largest allowed asymmetry ``max|A - A^T|`` relative to ``max(1, max|A|)``.

    Returns
    -------
    SpectralDecomposition
        Eigenvalues and orthonormal eigenvectors.

    Raises
    ------
    AsymmetricOperatorError
        If `a` is not symmetric within `tol`.
    """
    if not a.is_symmetric(tol):
        asymmetry = float(np.max(np.abs(a.entries - a.entries.T)))
        raise AsymmetricOperatorError(f"spectral needs a symmetric operator. Got max|A - A^T| = {asymmetry:.3e}")

    eigenvalues, eigenvectors = eigh(0.5 * (a.entries + a.entries.T))
    return SpectralDecomposition(eigenvalues, eigenvectors, a.grid)


def transport_residual(u_fwd: OperatorMatrix, u_inv: OperatorMatrix) -> float:
    """Max-norm of ``u_inv @ u_fwd - 1``."""
    u_fwd.check_grid(u_inv)
    return float(np.max(np.abs(u_inv.entries @ u_fwd.entries - np.eye(u_fwd.dimension))))


def heisenberg_transport(a: OperatorMatrix, u_fwd: OperatorMatrix, u_inv: OperatorMatrix, tol: float = 1e-8) -> OperatorMatrix:
    """
    Similarity transport ``u_inv @ a @ u_fwd``.

    Parameters
    ----------
    a : OperatorMatrix
        Operator to transport.
    u_fwd : OperatorMatrix
        Evolution operator.
    u_inv : OperatorMatrix
        Its inverse.
    tol : float, default=1e-8
        Largest allowed max-norm of ``u_inv @ u_fwd - 1``.

    Returns
    -------
    OperatorMatrix
        The transported operator.

    Raises
    ------
    IllConditionedError
        If `u_inv` is not an inverse of `u_fwd` within `tol`.
    """
    a.check_grid(u_fwd)
    residual = transport_residual(u_fwd, u_inv)
    if residual > tol:
        raise IllConditionedError(f"Inverse check failed: max|U^-1 U - 1| = {residual:.3e} > {tol:.1e}", residual=residual)
    logging.debug(f"Heisenberg transport of {a.label or 'operator'} with inverse residual {residual:.3e}")

    return OperatorMatrix(u_inv.entries @ a.entries @ u_fwd.entries, a.grid, a.label)


def operator_distance(a: OperatorMatrix | np.ndarray, b: OperatorMatrix | np.ndarray, subspace: np.ndarray | None = None) -> float:
    """
    Spectral-norm distance between two operators, optionally restricted to a subspace.

    Parameters
    ----------
    a, b : OperatorMatrix | np.ndarray
        Operators to compare. Plain arrays are taken as already expressed in the subspace basis.
    subspace : np.ndarray | None, default=None
        Orthonormal basis vectors as columns. When given, operators are compared through
        ``S^T (A - B) S``.

    Returns
    -------
    float
        The distance.
    """
    if isinstance(a, OperatorMatrix) and isinstance(b, OperatorMatrix):
        a.check_grid(b)
    diff = np.asarray(a.entries if isinstance(a, OperatorMatrix) else a) - np.asarray(b.entries if isinstance(b, OperatorMatrix) else b)
    if subspace is not None and diff.shape[0] == subspace.shape[0]:
        diff = subspace.T @ diff @ subspace
    return float(np.linalg.norm(diff, 2))
