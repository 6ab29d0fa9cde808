"""Base class for running experiments, including parallel fan-out, logging, timing and result saving."""

# Authors: Andrew Rollings (modified by Kyle Nakamura)
# License: BSD 3-clause

import logging
import time
from abc import ABC, abstractmethod
from typing import Any, Callable, Iterable

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from qcorr.config.experiment_config import ExperimentConfig
from qcorr.decorators import get_short_name
from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams
from qcorr.observables.heisenberg import LowEnergyBasis
from qcorr.runners.utils import build_data_filename, write_csv
from qcorr.states.state_vector import boundary_state


class _RunnerBase(ABC):
    """
    Abstract base class for running an experiment from a configuration.

    Subclasses implement `_run`, which builds the result table. Independent pieces of work are
    fanned out with `_parallel_map`; results come back in submission order, so the rows of the
    table do not depend on the number of threads.

    Parameters
    ----------
    config : ExperimentConfig
        Experiment configuration.
    experiment_name : str, default="qcorr"
        Name used in result file names.
    output_directory : str | None, default=None
        Directory to save the result table in; nothing is saved when None.
    threads : int, default=1
        Number of joblib worker threads.

    Attributes
    ----------
    results_df : pd.DataFrame | None
        Table of the last run.
    run_time : float | None
        Wall-clock duration of the last run in seconds.
    """

    def __init__(self, config: ExperimentConfig, experiment_name: str = "qcorr", output_directory: str | None = None, threads: int = 1):
        if not isinstance(threads, int) or threads < 1:
            raise ValueError(f"threads must be a positive integer. Got {threads}")
        self.config: ExperimentConfig = config
        self.threads: int = threads
        self.results_df: pd.DataFrame | None = None
        self.run_time: float | None = None
        self._experiment_name: str = experiment_name
        self._output_directory: str | None = output_directory

    @classmethod
    def runner_name(cls) -> str:
        """Get a short name for the runner class."""
        return get_short_name(cls)

    @staticmethod
    def _print_banner(text: str):
        """Print a formatted banner for logging."""
        logging.info("*" * len(text))
        logging.info(text)
        logging.info("*" * len(text))

    def _parallel_map(self, func: Callable[[Any], Any], items: Iterable[Any]) -> list[Any]:
        """Apply `func` to every item on the worker threads, keeping the input order."""
        items = list(items)
        if self.threads == 1 or len(items) < 2:
            return [func(item) for item in items]
        return Parallel(n_jobs=self.threads, prefer="threads")(delayed(func)(item) for item in items)

    def _expectation(self, basis: LowEnergyBasis, matrix: np.ndarray, params: ModelParams, grid: FieldGrid) -> float:
        """Expectation of a low-energy matrix in the configured boundary states, placed at the window centre."""
        states = self.config.states
        if states.bra == "ground" and states.ket == "ground":
            return basis.ground_expectation(matrix)
        site = params.center_site
        bra = boundary_state(states.bra, grid, params, side="bra", site=site, width=states.bra_width)
        ket = boundary_state(states.ket, grid, params, side="ket", site=site, width=states.ket_width)
        return basis.expectation(matrix, bra, ket)

    @abstractmethod
    def _run(self) -> pd.DataFrame:
        """Compute the result table."""
        raise NotImplementedError("Subclasses must implement _run method.")

    def run(self) -> pd.DataFrame:
        """
        Run the experiment and return its result table.

        The table is also saved as CSV when an output directory was given.
        """
        self._print_banner(f"*** Run START: {self.runner_name()} ***")
        run_start = time.perf_counter()
        self.results_df = self._run()
        self.run_time = time.perf_counter() - run_start
        logging.info(f"Run time: {self.run_time:.2f} seconds")

        if self._output_directory is not None:
            self._dump_df_to_disk(self.results_df, df_name="results")
        self._print_banner(f"*** Run END: {self.runner_name()} ***")
        return self.results_df

    def _dump_df_to_disk(self, df: pd.DataFrame, df_name: str) -> str:
        """Save a table as CSV and return the file name."""
        filename = build_data_filename(
            output_directory=self._output_directory,
            runner_name=self.runner_name(),
            experiment_name=self._experiment_name,
            df_name=df_name,
        )
        write_csv(df, filename)
        logging.info(f"Saved: [{filename}]")
        return filename
