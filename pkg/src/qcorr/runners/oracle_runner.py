"""
Class for the oracle check: operator expectations against brute-force configuration sums on random small models.

Example usage:

    config = load_config("oracle.cfg")
    runner = OracleCheckRunner(config, threads=4)
    df = runner.run()
    assert runner.passed
"""

# License: BSD 3-clause

import logging
from typing import NamedTuple

import numpy as np
import pandas as pd

from qcorr.decorators import short_name
from qcorr.exceptions import BudgetExceededError
from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams, QuarticPotential
from qcorr.observables.expr import ObservableExpr
from qcorr.observables.heisenberg import expect_observable
from qcorr.oracle.brute_force import ExteriorWeights, brute_expectations, count_configurations
from qcorr.oracle.exterior import chain_exterior, exterior_irrelevance_check, integrated_exterior
from qcorr.runners._runner_base import _RunnerBase
from qcorr.states.state_vector import StateVector

ORACLE_TOLERANCE = 1e-10
EXTERIOR_TOLERANCE = 1e-12


class OracleModel(NamedTuple):
    params: ModelParams
    exterior: ExteriorWeights
    mu2: float
    lam: float
    z: float


@short_name("oracle-check")
class OracleCheckRunner(_RunnerBase):
    """
    Runner comparing operator expectations with exact configuration sums.

    ``experiment.n_models`` random models are drawn from ``experiment.seed``: epsilon in {0.2, 0.5},
    Z in [1, 2], mu2 in [0.5, 1.5], lam in [0, 0.5] and random positive exterior weights, on
    ``experiment.oracle_sites`` interior sites and ``experiment.oracle_points`` grid points. Every
    configured observable is evaluated both ways. Two exterior fixtures are then checked on every
    model: an exterior chain against the states it induces, and a rescaled exterior.

    Attributes
    ----------
    passed : bool | None
        Whether every discrepancy of the last run stayed within tolerance.
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.passed: bool | None = None

    def _grid(self) -> FieldGrid:
        experiment = self.config.experiment
        return FieldGrid(experiment.oracle_points, experiment.oracle_phi_max)

    def draw_models(self) -> list[OracleModel]:
        """Random models of the check, reproducible from the configured seed."""
        experiment = self.config.experiment
        rng = np.random.default_rng(experiment.seed)
        grid = self._grid()
        models = []
        for _ in range(experiment.n_models):
            epsilon = float(rng.choice([0.2, 0.5]))
            z = float(rng.uniform(1.0, 2.0))
            mu2 = float(rng.uniform(0.5, 1.5))
            lam = float(rng.uniform(0.0, 0.5))
            lower, upper = rng.uniform(0.2, 1.2, size=(2, grid.n_points))
            params = ModelParams(epsilon, QuarticPotential(mu2, lam), z, experiment.oracle_sites)
            models.append(OracleModel(params, ExteriorWeights(lower, upper), mu2, lam, z))
        return models

    def _check_budget(self, models: list[OracleModel], grid: FieldGrid) -> None:
        budget = self.config.experiment.max_configs
        fixture = chain_exterior(models[0].exterior.lower, models[0].exterior.upper, models[0].params, grid, n_extra=1)
        count = max(count_configurations(grid, models[0].params, fixture), count_configurations(grid, models[0].params, models[0].exterior))
        if count > budget:
            raise BudgetExceededError(f"The oracle check needs {count} configurations per sum, more than the budget of {budget}", count=count)

    def _model_rows(self, index: int, model: OracleModel, observables: list[ObservableExpr], grid: FieldGrid) -> list[dict]:
        params, exterior = model.params, model.exterior
        brute = brute_expectations(observables, params, grid, exterior, max_configs=self.config.experiment.max_configs)
        ket = StateVector(exterior.lower, params.first_site, "ket", grid)
        bra = StateVector(exterior.upper, params.last_site, "bra", grid)

        rows = []
        for a, exact in zip(observables, brute):
            operator = expect_observable(a, params, grid, bra, ket)
            discrepancy = abs(operator - exact) / max(1.0, abs(exact))
            rows.append(
                {
                    "check": "operator",
                    "model": index,
                    "epsilon": params.epsilon,
                    "z": model.z,
                    "mu2": model.mu2,
                    "lam": model.lam,
                    "observable": str(a),
                    "brute_force": exact,
                    "operator": operator,
                    "discrepancy": discrepancy,
                    "passed": bool(discrepancy <= ORACLE_TOLERANCE),
                }
            )
        return rows

    def _exterior_rows(self, index: int, model: OracleModel, observables: list[ObservableExpr], grid: FieldGrid) -> list[dict]:
        params = model.params
        chained = chain_exterior(model.exterior.lower, model.exterior.upper, params, grid, n_extra=1)
        fixtures = {
            "exterior-chain": (chained, integrated_exterior(chained, grid)),
            "exterior-rescaled": (model.exterior, model.exterior.scaled(3.0, 3.0)),
        }
        rows = []
        for name, (ext1, ext2) in fixtures.items():
            report = exterior_irrelevance_check(
                observables, params, grid, ext1, ext2, tol=EXTERIOR_TOLERANCE, max_configs=self.config.experiment.max_configs
            )
            for label, v1, v2 in zip(report.observables, report.values_1, report.values_2):
                discrepancy = abs(v1 - v2)
                rows.append(
                    {
                        "check": name,
                        "model": index,
                        "epsilon": params.epsilon,
                        "z": model.z,
                        "mu2": model.mu2,
                        "lam": model.lam,
                        "observable": label,
                        "brute_force": v1,
                        "operator": v2,
                        "discrepancy": discrepancy,
                        "passed": bool(report.valid and discrepancy <= EXTERIOR_TOLERANCE),
                    }
                )
        return rows

    def _run(self) -> pd.DataFrame:
        grid = self._grid()
        models = self.draw_models()
        observables = self.config.observable_exprs(models[0].params.first_site, models[0].params.last_site)
        self._check_budget(models, grid)

        per_model = self._parallel_map(lambda item: self._model_rows(item[0], item[1], observables, grid), list(enumerate(models)))
        rows = [row for model_rows in per_model for row in model_rows]
        per_model = self._parallel_map(lambda item: self._exterior_rows(item[0], item[1], observables, grid), list(enumerate(models)))
        rows += [row for model_rows in per_model for row in model_rows]

        df = pd.DataFrame(rows)
        self.passed = bool(df["passed"].all())
        worst = float(df["discrepancy"].max())
        if self.passed:
            logging.info(f"Oracle check passed ({len(df)} comparisons, worst discrepancy {worst:.3e})")
        else:
            logging.error(f"Oracle check FAILED: {int((~df['passed']).sum())} of {len(df)} comparisons above tolerance (worst {worst:.3e})")
        return df

    def summary(self) -> pd.DataFrame:
        """Largest discrepancy per check and observable of the last run."""
        if self.results_df is None:
            raise ValueError("The runner has not been run yet.")
        return self.results_df.groupby(["check", "observable"], sort=False)["discrepancy"].max().reset_index()
