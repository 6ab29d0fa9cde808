"""
Class for the spectrum experiment: the lowest levels of the Hamiltonian next to the energies of the step kernel.

Example usage:

    config = load_config("harmonic.cfg")
    df = SpectrumRunner(config).run()
    df[["n", "E_n", "E_n_transfer"]]
"""

# License: BSD 3-clause

import logging

import numpy as np
import pandas as pd

from qcorr.decorators import short_name
from qcorr.evolution.step_kernel import check_grid_coupling, step_kernel
from qcorr.operators.algebra import spectral
from qcorr.operators.builders import build_H
from qcorr.runners._runner_base import _RunnerBase


@short_name("spectrum")
class SpectrumRunner(_RunnerBase):
    """
    Runner comparing the spectrum of the Hamiltonian with ``-ln(lambda_n) / epsilon`` of the step kernel.

    The number of levels is ``experiment.levels``. Both columns refer to the potential and kinetic
    coefficient of the first window site.
    """

    def _run(self) -> pd.DataFrame:
        grid = self.config.build_grid()
        params = self.config.build_params(grid)
        levels = self.config.check_levels(grid.n_points)
        check_grid_coupling(grid, params.epsilon, params.link_z(params.first_site))

        energies = spectral(build_H(params, grid, params.first_site)).eigenvalues[:levels]
        eigenvalues = np.sort(spectral(step_kernel(params, grid, params.first_site)).eigenvalues)[::-1][:levels]
        if np.any(eigenvalues <= 0):
            raise self.config.error(f"the leading {levels} step kernel eigenvalues must be positive; lower the number of levels", "experiment.levels")
        transfer_energies = -np.log(eigenvalues) / params.epsilon
        logging.info(f"E_0 = {energies[0]:.10g} (Hamiltonian), {transfer_energies[0]:.10g} (step kernel)")

        return pd.DataFrame(
            {
                "n": np.arange(levels),
                "E_n": energies,
                "E_n_minus_E_0": energies - energies[0],
                "E_n_transfer": transfer_energies,
                "E_n_transfer_minus_E_0": transfer_energies - transfer_energies[0],
            }
        )
