"""Classes and functions for the rank-one density matrix built from a bra and a ket."""

# License: BSD 3-clause

import numpy as np

from qcorr.exceptions import GridMismatchError
from qcorr.operators.operator_matrix import OperatorMatrix
from qcorr.states.state_vector import StateVector
from qcorr.states.expectation import _check_pair


class DensityMatrix:
    """
    Density matrix ``|ket}{bra| / {bra|ket}`` at a reference site.

    Parameters
    ----------
    operator : OperatorMatrix
        Matrix entries, trace normalised to 1.
    tau_site : int
        Site the density matrix refers to.
    """

    def __init__(self, operator: OperatorMatrix, tau_site: int):
        self.operator: OperatorMatrix = operator
        self.tau_site: int = int(tau_site)

    @property
    def entries(self) -> np.ndarray:
        return self.operator.entries

    @property
    def grid(self):
        return self.operator.grid

    def trace(self) -> float:
        return self.operator.trace()

    def rank(self, tol: float = 1e-10) -> int:
        return int(np.linalg.matrix_rank(self.entries, tol=tol * float(np.linalg.norm(self.entries, 2))))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(tau_site={self.tau_site}, n_points={self.grid.n_points})"


def density_matrix(bra: StateVector, ket: StateVector) -> DensityMatrix:
    """
    Rank-one density matrix of co-located states.

    Raises
    ------
    ValueError
        If the states are not co-located or their inner product vanishes.
    """
    _check_pair(bra, ket)
    norm = float(bra.values @ ket.values)
    if norm == 0:
        raise ValueError("bra and ket have zero inner product.")
    return DensityMatrix(OperatorMatrix(np.outer(ket.values, bra.values) / norm, ket.grid, "rho"), ket.tau_site)


def expect_density(rho: DensityMatrix, op: OperatorMatrix) -> float:
    """Expectation ``Tr(rho A)``."""
    if op.grid != rho.grid:
        raise GridMismatchError("Operator and density matrix live on different grids.")
    return float(np.sum(rho.entries * op.entries.T))


def transport_density(rho: DensityMatrix, u: OperatorMatrix, u_inv: OperatorMatrix, to_site: int) -> DensityMatrix:
    """Density matrix moved to another site, ``U rho U^-1``."""
    return DensityMatrix(OperatorMatrix(u.entries @ rho.entries @ u_inv.entries, rho.grid, "rho"), to_site)
