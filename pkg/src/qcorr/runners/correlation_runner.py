"""
Class for the two-point correlation table with classical, quantum and anti-ordered quantum products.

Example usage:

    config = load_config("harmonic.cfg")   # [experiment] tau_pairs = 1:0, 0:1 ; product_kind = quantum
    df = CorrelationRunner(config).run()
"""

# License: BSD 3-clause

import logging

import pandas as pd

from qcorr.decorators import short_name
from qcorr.exceptions import UnsupportedBasisError
from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams
from qcorr.observables.expr import ObservableExpr, classical_product
from qcorr.observables.heisenberg import LowEnergyBasis
from qcorr.observables.symbolic import quantum_product
from qcorr.runners._runner_base import _RunnerBase


@short_name("correlate")
class CorrelationRunner(_RunnerBase):
    """
    Runner for ``<phi(tau_1) phi(tau_2)>`` under the configured product.

    ``classical`` is the pointwise product, ``quantum`` the quantum product in the order the pair is
    given, and ``quantum-antiordered`` the quantum product with the earlier time on the left. Quantum
    products go through the symbolic algebra when it covers them; otherwise the operator product is
    evaluated on the low-energy subspace and the row is flagged ``numeric_only = 1``.
    """

    def _row(self, pair: tuple[float, float], sites: tuple[int, int], basis: LowEnergyBasis, params: ModelParams, grid: FieldGrid) -> dict:
        tau_1, tau_2 = pair
        site_1, site_2 = sites
        kind = self.config.experiment.product_kind
        reference = params.center_site

        left, right = ObservableExpr.phi(site_1), ObservableExpr.phi(site_2)
        if kind == "quantum-antiordered" and site_1 > site_2:
            left, right = right, left

        numeric_only = 0
        if kind == "classical":
            matrix = basis.heisenberg(classical_product(left, right), reference)
        else:
            try:
                matrix = basis.heisenberg(quantum_product(left, right), reference)
            except UnsupportedBasisError:
                logging.info(f"No symbolic quantum product for {left} o {right}; using the operator product")
                matrix = basis.quantum_matrix(left, right, reference)
                numeric_only = 1

        return {
            "tau_1": tau_1,
            "tau_2": tau_2,
            "site_1": site_1,
            "site_2": site_2,
            "product_kind": kind,
            "value": self._expectation(basis, matrix, params, grid),
            "numeric_only": numeric_only,
        }

    def _run(self) -> pd.DataFrame:
        grid = self.config.build_grid()
        params = self.config.build_params(grid)
        pairs = list(zip(self.config.experiment.tau_pairs, self.config.tau_sites(params)))
        basis = LowEnergyBasis(params, grid, levels=min(self.config.experiment.subspace_levels, grid.n_points))
        return pd.DataFrame(self._parallel_map(lambda item: self._row(item[0], item[1], basis, params, grid), pairs))
