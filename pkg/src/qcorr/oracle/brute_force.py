"""Exact expectation values by enumerating every configuration of a small window."""

# License: BSD 3-clause

import logging
import math
from typing import Iterator, Sequence

import numpy as np

from qcorr.exceptions import BudgetExceededError
from qcorr.lattice.action import log_link_weight
from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams
from qcorr.observables.expr import ObservableExpr

DEFAULT_MAX_CONFIGS = 10**8


class ExteriorWeights:
    """
    Weights standing for the integrated-out exterior on both sides of a window.

    The terminal weights multiply the outermost summed sites. Each side may carry a chain of extra
    exterior sites, given as positive kernels indexed ``[inner, outer]``; the oracle sums over those
    sites explicitly, while `induced_states` integrates them out.

    Parameters
    ----------
    lower : np.ndarray
        Terminal weight below the window, one value per grid point.
    upper : np.ndarray
        Terminal weight above the window.
    lower_chain : Sequence[np.ndarray], default=()
        Kernels of the extra sites below the window, innermost first.
    upper_chain : Sequence[np.ndarray], default=()
        Kernels of the extra sites above the window, innermost first.
    """

    def __init__(self, lower: np.ndarray, upper: np.ndarray, lower_chain: Sequence[np.ndarray] = (), upper_chain: Sequence[np.ndarray] = ()):
        self.lower: np.ndarray = self._check_weights(lower, "lower")
        self.upper: np.ndarray = self._check_weights(upper, "upper")
        n = self.lower.size
        if self.upper.size != n:
            raise ValueError(f"lower and upper weights must have the same length. Got {n} and {self.upper.size}")

        chains = []
        for name, kernels in (("lower_chain", lower_chain), ("upper_chain", upper_chain)):
            checked = []
            for kernel in kernels:
                kernel = self._check_weights(kernel, name)
                if kernel.shape != (n, n):
                    raise ValueError(f"{name} kernels must have shape ({n}, {n}). Got {kernel.shape}")
                checked.append(kernel)
            chains.append(tuple(checked))
        self.lower_chain: tuple[np.ndarray, ...] = chains[0]
        self.upper_chain: tuple[np.ndarray, ...] = chains[1]

    @staticmethod
    def _check_weights(values: np.ndarray, name: str) -> np.ndarray:
        values = np.array(values, dtype=float)
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise ValueError(f"{name} weights must be strictly positive and finite.")
        values.setflags(write=False)
        return values

    @property
    def n_points(self) -> int:
        return int(self.lower.size)

    @property
    def n_extra_sites(self) -> int:
        return len(self.lower_chain) + len(self.upper_chain)

    def induced_states(self, grid: FieldGrid) -> tuple[np.ndarray, np.ndarray]:
        """Boundary weights left on the two edge sites after summing out the exterior chains: ``(lower, upper)``."""
        if grid.n_points != self.n_points:
            raise ValueError(f"Exterior weights have {self.n_points} points, the grid {grid.n_points}")
        lower = self.lower
        for kernel in reversed(self.lower_chain):
            lower = grid.spacing * (kernel @ lower)
        upper = self.upper
        for kernel in reversed(self.upper_chain):
            upper = grid.spacing * (kernel @ upper)
        return lower, upper

    def scaled(self, lower_factor: float, upper_factor: float = 1.0) -> "ExteriorWeights":
        return ExteriorWeights(lower_factor * self.lower, upper_factor * self.upper, self.lower_chain, self.upper_chain)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(n_points={self.n_points}, lower_chain={len(self.lower_chain)}, upper_chain={len(self.upper_chain)})"


def _log_tables(params: ModelParams, grid: FieldGrid, window: tuple[int, int], exterior: ExteriorWeights) -> list[np.ndarray]:
    first, last = window
    # Lower chain kernels are [inner, outer] = [upper, lower]; upper chain kernels are [inner, outer] = [lower, upper].
    tables = [np.log(kernel) for kernel in reversed(exterior.lower_chain)]
    tables += [log_link_weight(params, grid, site) for site in range(first, last)]
    tables += [np.log(kernel).T for kernel in exterior.upper_chain]
    return tables


def count_configurations(grid: FieldGrid, params: ModelParams, exterior: ExteriorWeights | None = None, window: tuple[int, int] | None = None) -> int:
    """Number of configurations summed by `brute_expectation`, exterior chain sites included."""
    first, last = _check_window(params, window)
    extra = 0 if exterior is None else exterior.n_extra_sites
    return grid.n_points ** (last - first + 1 + extra)


def _check_window(params: ModelParams, window: tuple[int, int] | None) -> tuple[int, int]:
    if window is None:
        return params.first_site, params.last_site
    first, last = (int(s) for s in window)
    if not (params.first_site <= first <= last <= params.last_site):
        raise ValueError(f"window must lie in {params.first_site}..{params.last_site} with first <= last. Got {window}")
    return first, last


def _weighted_chunks(
    params: ModelParams,
    grid: FieldGrid,
    exterior: ExteriorWeights,
    window: tuple[int, int],
    index_order: np.ndarray,
    chunk_size: int,
) -> Iterator[tuple[np.ndarray, dict[int, np.ndarray]]]:
    """Weights (shifted to at most 1) and window field values of consecutive blocks of configurations."""
    first, last = window
    tables = _log_tables(params, grid, window, exterior)
    log_lower, log_upper = np.log(exterior.lower), np.log(exterior.upper)
    shift = math.fsum(float(t.max()) for t in tables) + float(log_lower.max()) + float(log_upper.max())

    n_lower = len(exterior.lower_chain)
    n_summed = n_lower + (last - first + 1) + len(exterior.upper_chain)
    shape = (grid.n_points,) * n_summed
    total = grid.n_points**n_summed

    for start in range(0, total, chunk_size):
        digits = np.unravel_index(np.arange(start, min(start + chunk_size, total)), shape)
        indices = [index_order[d] for d in digits]
        log_weight = log_lower[indices[0]] + log_upper[indices[-1]] - shift
        for k, table in enumerate(tables):
            log_weight = log_weight + table[indices[k + 1], indices[k]]
        fields = {site: grid.points[indices[n_lower + site - first]] for site in range(first, last + 1)}
        yield np.exp(log_weight), fields


def brute_expectations(
    observables: Sequence[ObservableExpr],
    params: ModelParams,
    grid: FieldGrid,
    exterior: ExteriorWeights,
    window: tuple[int, int] | None = None,
    max_configs: int = DEFAULT_MAX_CONFIGS,
    index_order: Sequence[int] | None = None,
    chunk_size: int = 2**16,
) -> list[float]:
    """
    Expectation values of several observables as exact sums over every configuration.

    Each configuration is weighted with the product of its link weights and the exterior weights.
    Sums are accumulated with `math.fsum`, which rounds the exact sum once, so results do not depend
    on the enumeration order.

    Parameters
    ----------
    observables : Sequence[ObservableExpr]
        Observables with support inside the window.
    params : ModelParams
        Model parameters.
    grid : FieldGrid
        Field grid.
    exterior : ExteriorWeights
        Exterior weights on the two sides of the window.
    window : tuple[int, int] | None, default=None
        First and last summed site; the whole model window by default. A single site is allowed.
    max_configs : int, default=10**8
        Enumeration budget.
    index_order : Sequence[int] | None, default=None
        Permutation of grid indices giving the enumeration order of every site.
    chunk_size : int, default=65536
        Configurations evaluated per vectorised block.

    Returns
    -------
    list[float]
        One expectation value per observable.

    Raises
    ------
    BudgetExceededError
        If the number of configurations exceeds `max_configs`. Nothing is evaluated in that case.
    SupportError
        If an observable leaves the window.
    """
    window = _check_window(params, window)
    count = count_configurations(grid, params, exterior, window)
    if count > max_configs:
        raise BudgetExceededError(f"Enumeration needs {count} configurations, more than the budget of {max_configs}", count=count)
    if exterior.n_points != grid.n_points:
        raise ValueError(f"Exterior weights have {exterior.n_points} points, the grid {grid.n_points}")
    for a in observables:
        a.check_support(*window)

    order = np.arange(grid.n_points) if index_order is None else np.asarray(index_order, dtype=np.int64)
    if sorted(order.tolist()) != list(range(grid.n_points)):
        raise ValueError(f"index_order must be a permutation of range({grid.n_points}). Got {list(order)}")
    logging.info(f"Brute-force sum over {count} configurations of sites {window[0]}..{window[1]} (+{exterior.n_extra_sites} exterior)")

    def stream(a: ObservableExpr | None) -> Iterator[float]:
        for weights, fields in _weighted_chunks(params, grid, exterior, window, order, chunk_size):
            if a is None:
                yield from weights.tolist()
            else:
                values = np.broadcast_to(np.asarray(a.evaluate(fields, params), dtype=float), weights.shape)
                yield from (weights * values).tolist()

    norm = math.fsum(stream(None))
    if norm == 0:
        raise ValueError("All configuration weights underflow to zero.")
    return [math.fsum(stream(a)) / norm for a in observables]


def brute_expectation(
    a: ObservableExpr,
    params: ModelParams,
    grid: FieldGrid,
    exterior: ExteriorWeights,
    window: tuple[int, int] | None = None,
    max_configs: int = DEFAULT_MAX_CONFIGS,
    index_order: Sequence[int] | None = None,
) -> float:
    """
    Expectation value of one observable as an exact sum over every configuration.

    Examples
    --------
    >>> grid = FieldGrid(n_points=3, phi_max=1.0)
    >>> params = ModelParams(epsilon=0.5, potential=QuarticPotential(mu2=0.0))
    >>> flat = ExteriorWeights(np.ones(3), np.ones(3))
    >>> round(brute_expectation(ObservableExpr.phi(1, 2), params, grid, flat, window=(1, 1)), 12)
    0.666666666667
    """
    return brute_expectations([a], params, grid, exterior, window, max_configs, index_order)[0]

