"""Classes and functions for composed evolution operators and their inverses."""

# License: BSD 3-clause

import logging
from typing import NamedTuple

import numpy as np
from scipy.linalg import expm, inv

from qcorr.exceptions import IllConditionedError
from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams
from qcorr.operators.builders import build_H, build_identity
from qcorr.operators.operator_matrix import OperatorMatrix
from qcorr.evolution.step_kernel import step_kernel


class InverseEvolution(NamedTuple):
    """Inverse of an evolution operator together with the checks it passed."""

    operator: OperatorMatrix
    residual: float
    condition: float


def invert_evolution(u: OperatorMatrix, max_residual: float = 1e-8, max_condition: float = 1e13) -> InverseEvolution:
    """
    Dense inverse of an evolution operator with a residual report.

    Parameters
    ----------
    u : OperatorMatrix
        Operator to invert.
    max_residual : float, default=1e-8
        Largest accepted ``max|U U^-1 - 1|``.
    max_condition : float, default=1e13
        Largest accepted 2-norm condition number.

    Returns
    -------
    InverseEvolution
        The inverse, the residual and the condition number.

    Raises
    ------
    IllConditionedError
        If the condition number or the residual exceeds its threshold. The error carries the residual.
    """
    condition = float(np.linalg.cond(u.entries))
    if not np.isfinite(condition) or condition > max_condition:
        raise IllConditionedError(
            f"Evolution operator is ill-conditioned (cond = {condition:.3e} > {max_condition:.1e})", residual=float("inf"), condition=condition
        )

    u_inv = inv(u.entries)
    residual = float(np.max(np.abs(u.entries @ u_inv - np.eye(u.dimension))))
    if residual > max_residual:
        raise IllConditionedError(
            f"Inverse evolution residual {residual:.3e} exceeds {max_residual:.1e} (cond = {condition:.3e})", residual=residual, condition=condition
        )
    logging.debug(f"Inverted {u.label or 'evolution'}: residual {residual:.3e}, cond {condition:.3e}")

    label = f"{u.label}^-1" if u.label else ""
    return InverseEvolution(OperatorMatrix(u_inv, u.grid, label), residual, condition)


def inverse_step_exponential(params: ModelParams, grid: FieldGrid, site: int | None = None) -> OperatorMatrix:
    """Inverse one-step evolution through the Hamiltonian route, ``exp(+epsilon H)``."""
    hamiltonian = build_H(params, grid, site)
    return OperatorMatrix(expm(params.epsilon * hamiltonian.entries), grid, "exp(eps H)")


class EvolutionChain:
    """
    Evolution operators between the sites of one model window, with cached step kernels and inverses.

    Parameters
    ----------
    params : ModelParams
        Model parameters.
    grid : FieldGrid
        Field grid.
    max_residual : float, default=1e-8
        Residual threshold for every dense inverse.

    Examples
    --------
    >>> chain = EvolutionChain(params, grid)
    >>> u = chain.forward(0, 3)            # T(3,2) T(2,1) T(1,0)
    >>> back = chain.transport(0, 3)       # U(0, 3) = U(3, 0)^-1
    """

    def __init__(self, params: ModelParams, grid: FieldGrid, max_residual: float = 1e-8):
        self.params: ModelParams = params
        self.grid: FieldGrid = grid
        self.max_residual: float = max_residual
        self._steps: dict[int, OperatorMatrix] = {}
        self._forward: dict[tuple[int, int], OperatorMatrix] = {}
        self._inverses: dict[tuple[int, int], InverseEvolution] = {}

    def step(self, site: int) -> OperatorMatrix:
        """Step kernel of the link `site` -> `site + 1`."""
        if site not in self._steps:
            self._steps[site] = step_kernel(self.params, self.grid, site)
        return self._steps[site]

    def _check_sites(self, *sites: int) -> None:
        for site in sites:
            if not (self.params.first_site <= site <= self.params.last_site):
                raise ValueError(f"site must lie in the window {self.params.first_site}..{self.params.last_site}. Got {site}")

    def forward(self, from_site: int, to_site: int) -> OperatorMatrix:
        """Ordered product of step kernels from `from_site` up to `to_site`."""
        self._check_sites(from_site, to_site)
        if to_site < from_site:
            raise ValueError(f"Forward evolution needs to_site >= from_site. Got {from_site} -> {to_site}")
        key = (from_site, to_site)
        if key not in self._forward:
            entries = np.eye(self.grid.n_points)
            for site in range(from_site, to_site):
                entries = self.step(site).entries @ entries
            self._forward[key] = OperatorMatrix(entries, self.grid, f"U({to_site},{from_site})")
        return self._forward[key]

    def inverse(self, from_site: int, to_site: int) -> InverseEvolution:
        """Inverse of ``forward(from_site, to_site)``."""
        key = (from_site, to_site)
        if key not in self._inverses:
            self._inverses[key] = invert_evolution(self.forward(from_site, to_site), max_residual=self.max_residual)
        return self._inverses[key]

    def transport(self, to_site: int, from_site: int) -> OperatorMatrix:
        """
        Evolution operator U(to_site, from_site) mapping kets at `from_site` to `to_site`.

        For ``to_site < from_site`` this is the inverse of the forward evolution.
        """
        if to_site >= from_site:
            return self.forward(from_site, to_site)
        return self.inverse(to_site, from_site).operator


def evolve(from_site: int, to_site: int, params: ModelParams, grid: FieldGrid) -> OperatorMatrix:
    """
    Evolution operator U(to_site, from_site) as the ordered product of step kernels.

    Zero steps give the identity.

    Parameters
    ----------
    from_site : int
        Starting site.
    to_site : int
        Final site, ``to_site >= from_site``.
    params : ModelParams
        Model parameters.
    grid : FieldGrid
        Field grid.

    Returns
    -------
    OperatorMatrix
        The evolution operator.
    """
    if from_site == to_site:
        EvolutionChain(params, grid)._check_sites(from_site)
        return build_identity(grid)
    return EvolutionChain(params, grid).forward(from_site, to_site)
