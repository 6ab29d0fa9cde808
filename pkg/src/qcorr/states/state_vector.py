"""Classes and functions for boundary states: the grid functions left by integrating out the exterior of a window."""

# License: BSD 3-clause

import logging
from typing import Literal, NamedTuple

import numpy as np
import pandas as pd

from qcorr.exceptions import ConvergenceError
from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams
from qcorr.evolution.step_kernel import step_kernel

Side = Literal["ket", "bra"]


class StateVector:
    """
    Real grid function located at a site, acting as a ket |psi} or a bra {psi|.

    Kets carry the information of everything below their site and evolve forward; bras carry
    everything above their site and contract evolution operators from the left.

    Parameters
    ----------
    values : np.ndarray
        Samples of the state on the grid points.
    tau_site : int
        Site the state is located at.
    side : {"ket", "bra"}, default="ket"
        Whether the state is a ket or a bra.
    grid : FieldGrid
        Grid the state is sampled on.
    """

    def __init__(self, values: np.ndarray, tau_site: int, side: Side = "ket", grid: FieldGrid | None = None):
        if grid is None:
            raise ValueError("A StateVector needs the FieldGrid it is sampled on.")
        if side not in ("ket", "bra"):
            raise ValueError(f"side must be 'ket' or 'bra'. Got {side}")
        values = np.array(values, dtype=float)
        if values.shape != (grid.n_points,):
            raise ValueError(f"values must have shape ({grid.n_points},). Got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("State values must be finite.")
        if not np.any(values):
            raise ValueError("A state must not vanish identically.")
        values.setflags(write=False)

        self.values: np.ndarray = values
        self.tau_site: int = int(tau_site)
        self.side: Side = side
        self.grid: FieldGrid = grid

    @property
    def is_positive(self) -> bool:
        return bool(np.all(self.values >= 0))

    def with_values(self, values: np.ndarray, tau_site: int | None = None) -> "StateVector":
        return StateVector(values, self.tau_site if tau_site is None else tau_site, self.side, self.grid)

    def scaled(self, factor: float) -> "StateVector":
        return self.with_values(factor * self.values)

    def normalized(self) -> "StateVector":
        """Same state rescaled to unit maximum modulus."""
        return self.scaled(1.0 / float(np.max(np.abs(self.values))))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(side={self.side}, tau_site={self.tau_site}, n_points={self.grid.n_points})"


class PowerIterationResult(NamedTuple):
    eigenvalue: float
    vector: np.ndarray
    iterations: int
    residual: float


def power_iteration(matrix: np.ndarray, tol: float = 1e-12, max_iter: int = 100_000, start: np.ndarray | None = None) -> PowerIterationResult:
    """
    Dominant eigenpair of a matrix by power iteration.

    Iterates until the relative residual ``||A x - lambda x|| / ||A x||`` drops to `tol`, with
    lambda the Rayleigh quotient. For a strictly positive kernel and a positive start vector the
    iterates stay positive and converge to the Perron vector.

    Parameters
    ----------
    matrix : np.ndarray
        Square matrix.
    tol : float, default=1e-12
        Residual tolerance.
    max_iter : int, default=100000
        Iteration cap.
    start : np.ndarray | None, default=None
        Start vector; all ones by default.

    Returns
    -------
    PowerIterationResult
        Eigenvalue, eigenvector scaled to unit maximum, iterations used and final residual.

    Raises
    ------
    ConvergenceError
        If the tolerance is not reached within `max_iter` iterations.
    """
    matrix = np.asarray(matrix, dtype=float)
    x = np.ones(matrix.shape[0]) if start is None else np.asarray(start, dtype=float).copy()
    x /= np.linalg.norm(x)

    residual = np.inf
    for iteration in range(1, max_iter + 1):
        y = matrix @ x
        y_norm = np.linalg.norm(y)
        if y_norm == 0:
            raise ConvergenceError("Power iteration hit the null space of the matrix.")
        eigenvalue = float(x @ y)
        residual = float(np.linalg.norm(y - eigenvalue * x) / y_norm)
        if residual <= tol:
            vector = x / x[np.argmax(np.abs(x))]
            logging.debug(f"Power iteration converged after {iteration} iterations (residual {residual:.3e})")
            return PowerIterationResult(eigenvalue, vector, iteration, residual)
        x = y / y_norm

    raise ConvergenceError(f"Power iteration did not reach residual {tol:.1e} in {max_iter} iterations (last {residual:.3e})")


def boundary_state(
    kind: str,
    grid: FieldGrid,
    params: ModelParams,
    side: Side = "ket",
    site: int | None = None,
    width: float = 1.0,
    center: float = 0.0,
    values: np.ndarray | None = None,
    tol: float = 1e-12,
) -> StateVector:
    """
    Positive boundary state of a window.

    Parameters
    ----------
    kind : {"uniform", "gaussian", "ground", "custom"}
        ``uniform`` is all ones; ``gaussian`` is ``exp(-(phi - center)^2 / (2 width^2))``;
        ``ground`` is the dominant eigenvector of the step kernel next to `site`, found by power
        iteration; ``custom`` takes `values` as given.
    grid : FieldGrid
        Field grid.
    params : ModelParams
        Model parameters.
    side : {"ket", "bra"}, default="ket"
        Kets default to the lowest window site, bras to the highest.
    site : int | None, default=None
        Site of the state.
    width : float, default=1.0
        Width of the ``gaussian`` kind. Must be greater than 0.
    center : float, default=0.0
        Centre of the ``gaussian`` kind.
    values : np.ndarray | None, default=None
        Grid values of the ``custom`` kind.
    tol : float, default=1e-12
        Residual tolerance of the ``ground`` power iteration.

    Returns
    -------
    StateVector
        The boundary state.

    Raises
    ------
    ValueError
        If the kind is unknown, the width is not positive or custom values are negative or zero everywhere.
    """
    if site is None:
        site = params.first_site if side == "ket" else params.last_site
    params.check_site(site)

    if kind == "uniform":
        state = np.ones(grid.n_points)
    elif kind == "gaussian":
        if not (width > 0):
            raise ValueError(f"width must be greater than 0. Got {width}")
        state = np.exp(-0.5 * ((grid.points - center) / width) ** 2)
    elif kind == "ground":
        link = site if site < params.last_site else site - 1
        kernel = step_kernel(params, grid, link).entries
        result = power_iteration(kernel if side == "ket" else kernel.T, tol=tol)
        logging.info(f"Ground {side} at site {site}: eigenvalue {result.eigenvalue:.12g} after {result.iterations} iterations")
        state = np.clip(result.vector, 0.0, None)
    elif kind == "custom":
        if values is None:
            raise ValueError("The custom kind needs explicit values.")
        state = np.asarray(values, dtype=float)
        if state.shape != (grid.n_points,):
            raise ValueError(f"values must have shape ({grid.n_points},). Got {state.shape}")
        if np.any(state < 0) or not np.any(state > 0):
            raise ValueError("Boundary states must be non-negative and not identically zero.")
    else:
        raise ValueError(f"kind must be one of 'uniform', 'gaussian', 'ground', 'custom'. Got {kind}")

    return StateVector(state, site, side, grid)


def state_to_frame(state: StateVector) -> pd.DataFrame:
    """Tabulate a state as ``(phi, amplitude)`` rows for inspection or CSV export."""
    return pd.DataFrame({"phi": state.grid.points, "amplitude": state.values})
