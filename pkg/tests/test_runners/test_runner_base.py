"""Unit tests for runners/_runner_base.py"""

# License: BSD 3-clause

import threading
import time

import pandas as pd
import pytest

from qcorr.config import parse_config_text

# noinspection PyProtectedMember
from qcorr.runners._runner_base import _RunnerBase
from qcorr.runners import csv_text


@pytest.fixture
def config():
    """Return a minimal configuration."""
    return parse_config_text("[model]\nepsilon = 0.1\n")


@pytest.fixture
def test_runner():
    """Return a runner class whose table lists the squares of 0..5, computed through the worker pool."""

    # noinspection PyMissingOrEmptyDocstring
    class TestRunner(_RunnerBase):
        def _run(self):
            def square(x):
                time.sleep(0.001 * (5 - x))
                return {"x": x, "x_sq": x * x, "thread": threading.get_ident()}

            return pd.DataFrame(self._parallel_map(square, range(6)))

    return TestRunner


class TestRunnerBase:

    def test_threads_validation(self, config, test_runner):
        with pytest.raises(ValueError, match="threads"):
            test_runner(config, threads=0)
        with pytest.raises(ValueError, match="threads"):
            test_runner(config, threads=2.0)

    def test_runner_name_defaults_to_class_name(self, test_runner):
        assert test_runner.runner_name() == "TestRunner"

    def test_run_records_results(self, config, test_runner):
        runner = test_runner(config)
        df = runner.run()
        assert df is runner.results_df
        assert df["x_sq"].tolist() == [0, 1, 4, 9, 16, 25]
        assert runner.run_time >= 0.0

    def test_parallel_map_keeps_order(self, config, test_runner):
        serial = test_runner(config).run()
        parallel = test_runner(config, threads=3).run()
        pd.testing.assert_frame_equal(serial.drop(columns="thread"), parallel.drop(columns="thread"))

    def test_results_saved_when_directory_given(self, config, test_runner, tmp_path):
        runner = test_runner(config, experiment_name="squares", output_directory=str(tmp_path))
        df = runner.run()
        path = tmp_path / "squares" / "testrunner__squares__results.csv"
        assert path.read_text(encoding="utf-8") == csv_text(df)

    def test_nothing_saved_without_directory(self, config, test_runner, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        test_runner(config).run()
        assert list(tmp_path.iterdir()) == []

    def test_abstract_run(self, config):
        with pytest.raises(TypeError):
            _RunnerBase(config)
