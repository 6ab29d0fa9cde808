"""Unit tests for runners/spectrum_runner.py"""

# License: BSD 3-clause

import numpy as np
import pytest

from qcorr.config import parse_config_text
from qcorr.exceptions import ConfigError, GridCouplingError
from qcorr.runners import SpectrumRunner

HARMONIC = """
[model]
epsilon = 0.05
mu2 = 1.0
lam = 0.0
z = 1.0
n_sites = 4

[grid]
n_points = 201
phi_max = 6.0

[experiment]
levels = {levels}
"""


class TestSpectrumRunner:

    def test_harmonic_levels(self):
        df = SpectrumRunner(parse_config_text(HARMONIC.format(levels=4))).run()
        assert list(df.columns) == ["n", "E_n", "E_n_minus_E_0", "E_n_transfer", "E_n_transfer_minus_E_0"]
        assert df["n"].tolist() == [0, 1, 2, 3]
        expected = np.arange(4) + 0.5
        assert np.allclose(df["E_n"], expected, atol=0.02)
        assert np.allclose(df["E_n_transfer"], expected, atol=0.02)
        assert df["E_n_minus_E_0"].iloc[0] == 0.0
        assert np.all(np.diff(df["E_n"]) > 0)

    def test_too_many_levels(self):
        with pytest.raises(ConfigError, match="levels must not exceed") as exc_info:
            SpectrumRunner(parse_config_text(HARMONIC.format(levels=202))).run()
        assert exc_info.value.field == "experiment.levels"
        assert exc_info.value.line is not None

    def test_unresolved_grid_raises(self):
        config = parse_config_text(HARMONIC.format(levels=2).replace("n_points = 201", "n_points = 11"))
        with pytest.raises(GridCouplingError) as exc_info:
            SpectrumRunner(config).run()
        assert exc_info.value.ratio > 5

    def test_runner_name(self):
        assert SpectrumRunner.runner_name() == "spectrum"
