"""Exterior weight fixtures and the check that local expectations see the exterior only through its induced boundary states."""

# License: BSD 3-clause

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import pandas as pd

from qcorr.exceptions import InvalidFixtureError
from qcorr.lattice.action import log_link_weight
from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams
from qcorr.observables.expr import ObservableExpr
from qcorr.oracle.brute_force import DEFAULT_MAX_CONFIGS, ExteriorWeights, brute_expectations


def gaussian_exterior(grid: FieldGrid, width: float = 1.0, center: float = 0.0, upper_width: float | None = None) -> ExteriorWeights:
    """Gaussian terminal weights ``exp(-(phi - center)^2 / (2 width^2))`` on both sides, without exterior chains."""
    if width <= 0 or (upper_width is not None and upper_width <= 0):
        raise ValueError(f"width must be greater than 0. Got {width}, {upper_width}")
    phi = grid.points
    lower = np.exp(-((phi - center) ** 2) / (2.0 * width**2))
    upper = np.exp(-((phi - center) ** 2) / (2.0 * (width if upper_width is None else upper_width) ** 2))
    return ExteriorWeights(lower, upper)


def chain_exterior(lower: np.ndarray, upper: np.ndarray, params: ModelParams, grid: FieldGrid, n_extra: int = 1) -> ExteriorWeights:
    """
    Exterior made of `n_extra` further sites on each side of the window, ending in the given terminal weights.

    The extra sites are coupled with the link weights of the window's outermost links, so the chain
    behaves like a continuation of the model beyond the boundary sites.
    """
    if not isinstance(n_extra, int) or n_extra < 0:
        raise ValueError(f"n_extra must be a non-negative integer. Got {n_extra}")
    lower_kernel = np.exp(log_link_weight(params, grid, params.first_site))
    upper_kernel = np.exp(log_link_weight(params, grid, params.last_site - 1)).T
    return ExteriorWeights(lower, upper, (lower_kernel,) * n_extra, (upper_kernel,) * n_extra)


def integrated_exterior(exterior: ExteriorWeights, grid: FieldGrid) -> ExteriorWeights:
    """Exterior without chains whose terminal weights are the states induced by `exterior`."""
    return ExteriorWeights(*exterior.induced_states(grid))


def _normalised(values: np.ndarray) -> np.ndarray:
    return values / float(np.max(np.abs(values)))


def state_discrepancy(ext1: ExteriorWeights, ext2: ExteriorWeights, grid: FieldGrid) -> float:
    """Largest difference between the induced boundary states of two exteriors, each scaled to unit maximum."""
    states1, states2 = ext1.induced_states(grid), ext2.induced_states(grid)
    return max(float(np.max(np.abs(_normalised(s1) - _normalised(s2)))) for s1, s2 in zip(states1, states2))


@dataclass
class IrrelevanceReport:
    """
    Outcome of comparing local expectations under two exteriors.

    Attributes
    ----------
    valid : bool
        Whether the two exteriors induce the same boundary states.
    max_discrepancy : float
        Largest absolute difference of an expectation value.
    state_discrepancy : float
        Largest difference of the normalised induced states.
    tol : float
        Accepted discrepancy.
    observables : list[str]
        Observables compared.
    values_1, values_2 : list[float]
        Expectations under the first and second exterior.
    """

    valid: bool
    max_discrepancy: float
    state_discrepancy: float
    tol: float
    observables: list[str] = field(default_factory=list)
    values_1: list[float] = field(default_factory=list)
    values_2: list[float] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.valid and self.max_discrepancy <= self.tol

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "observable": self.observables,
                "value_1": self.values_1,
                "value_2": self.values_2,
                "discrepancy": np.abs(np.subtract(self.values_1, self.values_2)),
            }
        )


def exterior_irrelevance_check(
    observables: Sequence[ObservableExpr],
    params: ModelParams,
    grid: FieldGrid,
    ext1: ExteriorWeights,
    ext2: ExteriorWeights,
    window: tuple[int, int] | None = None,
    tol: float = 1e-12,
    state_tol: float = 1e-12,
    strict: bool = True,
    max_configs: int = DEFAULT_MAX_CONFIGS,
) -> IrrelevanceReport:
    """
    Compare brute-force expectations of local observables under two exteriors.

    Exteriors inducing the same boundary states must give the same local expectations, however
    different their weight tables or chains are.

    Parameters
    ----------
    observables : Sequence[ObservableExpr]
        Battery of local observables.
    params : ModelParams
        Model parameters.
    grid : FieldGrid
        Field grid.
    ext1, ext2 : ExteriorWeights
        The two exteriors.
    window : tuple[int, int] | None, default=None
        Summed window; the whole model window by default.
    tol : float, default=1e-12
        Accepted expectation discrepancy.
    state_tol : float, default=1e-12
        Accepted difference of the normalised induced states.
    strict : bool, default=True
        Raise when the induced states differ instead of reporting an invalid fixture.
    max_configs : int, default=10**8
        Enumeration budget per exterior.

    Returns
    -------
    IrrelevanceReport
        Values and discrepancies.

    Raises
    ------
    InvalidFixtureError
        If `strict` and the exteriors induce different boundary states. The report is attached.
    """
    discrepancy_of_states = state_discrepancy(ext1, ext2, grid)
    values_1 = brute_expectations(observables, params, grid, ext1, window, max_configs)
    values_2 = brute_expectations(observables, params, grid, ext2, window, max_configs)
    max_discrepancy = max((abs(v1 - v2) for v1, v2 in zip(values_1, values_2)), default=0.0)

    report = IrrelevanceReport(
        valid=discrepancy_of_states <= state_tol,
        max_discrepancy=max_discrepancy,
        state_discrepancy=discrepancy_of_states,
        tol=tol,
        observables=[str(a) for a in observables],
        values_1=values_1,
        values_2=values_2,
    )
    logging.info(f"Exterior check: state discrepancy {discrepancy_of_states:.3e}, max expectation discrepancy {max_discrepancy:.3e}")

    if not report.valid and strict:
        raise InvalidFixtureError(f"Exteriors induce different boundary states (discrepancy {discrepancy_of_states:.3e})", report=report)
    return report
