"""Unit tests for runners/ambiguity_runner.py"""

# License: BSD 3-clause

import numpy as np
import pandas as pd
import pytest

from qcorr.config import parse_config_text
from qcorr.runners import AmbiguityRunner

SWEEP = """
[model]
epsilon = 0.2
mu2 = 1.0
z = 1.0
n_sites = 6

[grid]
n_points = 121
phi_max = 6.0

[experiment]
eps_list = 0.2, 0.1, 0.05
subspace_levels = 6
"""


@pytest.fixture(scope="module")
def sweep():
    """Return the ambiguity table of the harmonic sweep."""
    return AmbiguityRunner(parse_config_text(SWEEP)).run()


class TestAmbiguityRunner:

    def test_columns_and_grids(self, sweep):
        assert list(sweep.columns) == ["epsilon", "n_points", "dfwd_sq", "dsym_sq", "gap", "gap_times_2epsZ", "gap_deviation"]
        assert sweep["epsilon"].tolist() == [0.2, 0.1, 0.05]
        assert sweep["n_points"].tolist()[:2] == [121, 121]
        assert sweep["n_points"].iloc[2] > 121

    def test_gap_approaches_inverse_spacing(self, sweep):
        for epsilon, scaled in zip(sweep["epsilon"], sweep["gap_times_2epsZ"]):
            assert abs(scaled - (1.0 - epsilon**2 / 2.0)) < 2.0 * epsilon**3

    def test_deviation_is_first_order(self, sweep):
        deviations = sweep["gap_deviation"].tolist()
        assert all(d < 0 for d in deviations)
        for coarse, fine in zip(deviations, deviations[1:]):
            assert coarse / fine == pytest.approx(2.0, abs=0.25)

    def test_threads_do_not_change_the_table(self, sweep):
        pd.testing.assert_frame_equal(AmbiguityRunner(parse_config_text(SWEEP), threads=3).run(), sweep)

    def test_single_spacing_without_list(self):
        config = parse_config_text(SWEEP.replace("eps_list = 0.2, 0.1, 0.05\n", ""))
        df = AmbiguityRunner(config).run()
        assert df["epsilon"].tolist() == [0.2]

    def test_configured_states_are_used(self, sweep):
        config = parse_config_text(SWEEP + "\n[states]\nbra = gaussian\nket = gaussian\nbra_width = 1.5\nket_width = 1.5\n")
        df = AmbiguityRunner(config).run()
        assert np.all(np.isfinite(df["gap"]))
        assert not np.allclose(df["dfwd_sq"], sweep["dfwd_sq"])
        assert np.allclose(df["gap_times_2epsZ"], 1.0, atol=0.1)
