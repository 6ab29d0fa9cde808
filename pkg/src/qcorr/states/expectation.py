"""Functions for evolving states, their inner product and operator expectation values."""

# License: BSD 3-clause

import numpy as np

from qcorr.exceptions import GridMismatchError
from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams
from qcorr.operators.operator_matrix import OperatorMatrix, SpectralDecomposition
from qcorr.evolution.evolve import EvolutionChain
from qcorr.states.state_vector import StateVector


def _check_pair(bra: StateVector, ket: StateVector) -> None:
    if bra.side != "bra" or ket.side != "ket":
        raise ValueError(f"Expected a bra and a ket. Got {bra.side} and {ket.side}")
    if bra.grid != ket.grid:
        raise GridMismatchError("bra and ket live on different grids.")
    if bra.tau_site != ket.tau_site:
        raise ValueError(f"bra and ket must be located at the same site. Got {bra.tau_site} and {ket.tau_site}")


def evolve_state(state: StateVector, to_site: int, params: ModelParams, grid: FieldGrid, chain: EvolutionChain | None = None) -> StateVector:
    """
    Move a state to another site of the window.

    Kets move forward with ``U(to, from)``; bras move backward by contracting ``U(from, to)`` from
    the left. The opposite directions need a dense inverse and may raise `IllConditionedError`.

    Parameters
    ----------
    state : StateVector
        State to move.
    to_site : int
        Target site inside the window.
    params : ModelParams
        Model parameters.
    grid : FieldGrid
        Field grid.
    chain : EvolutionChain | None, default=None
        Evolution cache to reuse.

    Returns
    -------
    StateVector
        The evolved state.
    """
    if state.grid != grid:
        raise GridMismatchError("State and evolution live on different grids.")
    params.check_site(to_site)
    chain = EvolutionChain(params, grid) if chain is None else chain
    from_site = state.tau_site
    if to_site == from_site:
        return state

    if state.side == "ket":
        values = chain.transport(to_site, from_site).entries @ state.values
    elif to_site < from_site:
        values = chain.forward(to_site, from_site).entries.T @ state.values
    else:
        values = chain.inverse(from_site, to_site).operator.entries.T @ state.values

    return state.with_values(values, to_site)


def spectral_evolve_state(state: StateVector, to_site: int, decomposition: SpectralDecomposition) -> StateVector:
    """
    Move a state with the mode sum of a site-independent step kernel.

    Parameters
    ----------
    state : StateVector
        State to move.
    to_site : int
        Target site.
    decomposition : SpectralDecomposition
        Eigensystem of the (symmetric) step kernel.

    Returns
    -------
    StateVector
        The evolved state, ``sum_n lambda_n^k v_n (v_n . psi)``.
    """
    steps = to_site - state.tau_site if state.side == "ket" else state.tau_site - to_site
    vectors = decomposition.eigenvectors
    factors = np.power(decomposition.eigenvalues, float(steps))
    values = vectors @ (factors * (vectors.T @ state.values))
    return state.with_values(values, to_site)


def inner(bra: StateVector, ket: StateVector) -> float:
    """
    Measure-weighted inner product ``spacing * sum(bra * ket)`` of co-located states.

    Examples
    --------
    >>> grid = FieldGrid(n_points=5, phi_max=1.0)
    >>> inner(StateVector(np.ones(5), 0, "bra", grid), StateVector(np.ones(5), 0, "ket", grid))
    2.5
    """
    _check_pair(bra, ket)
    return float(bra.grid.spacing * (bra.values @ ket.values))


def expect_operator(bra: StateVector, op: OperatorMatrix, ket: StateVector) -> float:
    """
    Ratio ``{bra|A|ket} / {bra|ket}`` of co-located states.

    The ratio is invariant under rescaling either state.

    Raises
    ------
    ValueError
        If the states are not co-located or their inner product vanishes.
    """
    _check_pair(bra, ket)
    if op.grid != ket.grid:
        raise GridMismatchError("Operator and states live on different grids.")
    norm = float(bra.values @ ket.values)
    if norm == 0:
        raise ValueError("bra and ket have zero inner product.")
    return float(bra.values @ (op.entries @ ket.values)) / norm
