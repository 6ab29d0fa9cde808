"""Unit tests for runners/oracle_runner.py"""

# License: BSD 3-clause

import pandas as pd
import pytest

from qcorr.config import parse_config_text
from qcorr.exceptions import BudgetExceededError, ConfigError
from qcorr.runners import OracleCheckRunner

SMALL = """
[model]
epsilon = 0.2

[experiment]
seed = 7
n_models = 2
oracle_sites = 2
oracle_points = 6
"""


@pytest.fixture(scope="module")
def finished_runner():
    """Return an oracle runner after one run on two small random models."""
    runner = OracleCheckRunner(parse_config_text(SMALL))
    runner.run()
    return runner


class TestOracleCheckRunner:

    def test_passes(self, finished_runner):
        df = finished_runner.results_df
        assert finished_runner.passed
        assert df["passed"].all()
        assert df.loc[df["check"] == "operator", "discrepancy"].max() <= 1e-10
        assert df.loc[df["check"] != "operator", "discrepancy"].max() <= 1e-12

    def test_table_layout(self, finished_runner):
        df = finished_runner.results_df
        columns = ["check", "model", "epsilon", "z", "mu2", "lam", "observable", "brute_force", "operator", "discrepancy", "passed"]
        assert list(df.columns) == columns
        # five default observables, two models and two exterior fixtures per model
        assert len(df) == 5 * 2 + 5 * 2 * 2
        assert df["check"].unique().tolist() == ["operator", "exterior-chain", "exterior-rescaled"]
        assert df.loc[df["check"] == "operator", "model"].tolist() == [0] * 5 + [1] * 5
        assert df.loc[df["check"] == "exterior-chain", "model"].tolist() == [0] * 5 + [1] * 5

    def test_summary(self, finished_runner):
        summary = finished_runner.summary()
        assert list(summary.columns) == ["check", "observable", "discrepancy"]
        assert len(summary) == 15

    def test_summary_before_run(self):
        with pytest.raises(ValueError, match="not been run"):
            OracleCheckRunner(parse_config_text(SMALL)).summary()

    def test_models_are_reproducible(self):
        first = OracleCheckRunner(parse_config_text(SMALL)).draw_models()
        second = OracleCheckRunner(parse_config_text(SMALL)).draw_models()
        assert [(m.mu2, m.lam, m.z, m.params.epsilon) for m in first] == [(m.mu2, m.lam, m.z, m.params.epsilon) for m in second]
        for model in first:
            assert model.params.epsilon in (0.2, 0.5)
            assert 1.0 <= model.z <= 2.0
            assert 0.5 <= model.mu2 <= 1.5
            assert 0.0 <= model.lam <= 0.5
            assert model.params.n_sites == 2

    def test_budget(self):
        runner = OracleCheckRunner(parse_config_text(SMALL + "max_configs = 1000\n"))
        with pytest.raises(BudgetExceededError) as exc_info:
            runner.run()
        assert exc_info.value.count == 6**6

    def test_custom_observables(self):
        runner = OracleCheckRunner(parse_config_text(SMALL + "observables = qmul(dfwd(1), dfwd(1)); dkin2(2)\n"))
        df = runner.run()
        assert runner.passed
        assert df["observable"].nunique() == 2

    def test_threads_do_not_change_the_table(self, finished_runner):
        parallel = OracleCheckRunner(parse_config_text(SMALL), threads=2).run()
        pd.testing.assert_frame_equal(parallel, finished_runner.results_df)

    @pytest.mark.parametrize("observables", ["foo(1)", "phi(9)", "qmul(phi(0), phi(2))"])
    def test_invalid_observables(self, observables):
        text = SMALL + f"observables = {observables}\n"
        with pytest.raises(ConfigError) as exc_info:
            OracleCheckRunner(parse_config_text(text)).run()
        assert exc_info.value.field == "experiment.observables"
