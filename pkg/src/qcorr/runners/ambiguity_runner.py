"""
Class for the derivative-ambiguity sweep: squared forward and symmetric derivatives for a list of lattice spacings.

Example usage:

    config = load_config("ambiguity.cfg")   # [experiment] eps_list = 0.2, 0.1, 0.05
    df = AmbiguityRunner(config, threads=3).run()
"""

# License: BSD 3-clause

import logging

import pandas as pd

from qcorr.decorators import short_name
from qcorr.evolution.step_kernel import check_grid_coupling, refine_grid
from qcorr.observables.expr import ObservableExpr
from qcorr.observables.heisenberg import LowEnergyBasis
from qcorr.runners._runner_base import _RunnerBase


@short_name("ambiguity")
class AmbiguityRunner(_RunnerBase):
    """
    Runner for the gap between ``dfwd^2`` and ``dsym^2`` as the lattice spacing shrinks.

    For every epsilon of ``experiment.eps_list`` (strictly decreasing) the configured grid is refined
    until it resolves the step kernel, and both squared derivatives at the window centre are
    evaluated in the configured boundary states, the ground state by default. Their difference
    approaches ``1 / (2 epsilon Z)``; the table reports the gap, ``gap * 2 epsilon Z`` and
    ``gap - 1 / (2 epsilon Z)``, the last of which is first order in epsilon.
    """

    def _point(self, epsilon: float) -> dict:
        base_grid = self.config.build_grid()
        z = self.config.model.z
        grid = refine_grid(base_grid, epsilon, z)
        check_grid_coupling(grid, epsilon, z)
        params = self.config.build_params(grid, epsilon=epsilon)

        center = params.center_site
        basis = LowEnergyBasis(params, grid, levels=min(self.config.experiment.subspace_levels, grid.n_points))
        dfwd_sq = self._expectation(basis, basis.heisenberg(ObservableExpr.dfwd(center, 2), center), params, grid)
        dsym_sq = self._expectation(basis, basis.heisenberg(ObservableExpr.dsym(center, 2), center), params, grid)
        gap = dfwd_sq - dsym_sq
        logging.info(f"epsilon={epsilon}: gap={gap:.10g} on {grid.n_points} points")

        return {
            "epsilon": epsilon,
            "n_points": grid.n_points,
            "dfwd_sq": dfwd_sq,
            "dsym_sq": dsym_sq,
            "gap": gap,
            "gap_times_2epsZ": gap * 2.0 * epsilon * z,
            "gap_deviation": gap - 1.0 / (2.0 * epsilon * z),
        }

    def _run(self) -> pd.DataFrame:
        eps_list = self.config.experiment.eps_list or (self.config.model.epsilon,)
        if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
            raise ValueError(f"eps_list must be strictly decreasing. Got {list(eps_list)}")
        return pd.DataFrame(self._parallel_map(self._point, eps_list))
