"""Unit tests for config/experiment_config.py"""

# License: BSD 3-clause

import numpy as np
import pytest

from qcorr.config import DEFAULT_OBSERVABLES, ExperimentConfig, ModelSection, config_fields, load_config, parse_config_text
from qcorr.exceptions import ConfigError
from qcorr.observables import parse_observable

FULL_CONFIG = """
# harmonic correlators near the continuum
[model]
epsilon = 0.02   # lattice spacing
mu2 = 1.0
lam = 0.0
z = 1.0
n_sites = 120

[grid]
n_points = 240
phi_max = 6.0

[states]
bra = gaussian
bra_width = 0.5

[experiment]
levels = 6
eps_list = 0.2, 0.1, 0.05
tau_pairs = 1:0, 0:1
product_kind = quantum-antiordered
observables = phi(1); mul(phi(2), phi(1))
max_configs = 1000
"""


class TestParseConfigText:

    def test_minimal_config_uses_defaults(self):
        config = parse_config_text("[model]\nepsilon = 0.1\n")
        assert config.model == ModelSection(epsilon=0.1)
        assert config.grid.n_points == 201 and config.grid.phi_max is None
        assert config.states.bra == config.states.ket == "ground"
        assert config.experiment.observables == DEFAULT_OBSERVABLES
        assert config.experiment.product_kind == "quantum"

    def test_full_config(self):
        config = parse_config_text(FULL_CONFIG)
        assert config.model.epsilon == 0.02
        assert config.model.n_sites == 120
        assert (config.grid.n_points, config.grid.phi_max) == (240, 6.0)
        assert (config.states.bra, config.states.bra_width, config.states.ket) == ("gaussian", 0.5, "ground")
        assert config.experiment.eps_list == (0.2, 0.1, 0.05)
        assert config.experiment.tau_pairs == ((1.0, 0.0), (0.0, 1.0))
        assert config.experiment.product_kind == "quantum-antiordered"
        assert config.experiment.observables == ("phi(1)", "mul(phi(2), phi(1))")
        assert config.experiment.max_configs == 1000

    @pytest.mark.parametrize(
        "text, line, field",
        [
            ("[model]\nepsilon = 0.1\n[plot]\n", 3, "plot"),
            ("[model]\nepsilon = 0.1\nmass = 2\n", 3, "model.mass"),
            ("[model]\nepsilon = 0.1\nepsilon = 0.2\n", 3, "model.epsilon"),
            ("[model]\nepsilon = -0.1\n", 2, "model.epsilon"),
            ("[model]\nepsilon = 0.1\nlam = -1\n", 3, "model.lam"),
            ("[model]\nepsilon = 0.1\nn_sites = 2.5\n", 3, "model.n_sites"),
            ("[model]\nepsilon = 0.1\n[grid]\nn_points = 2\n", 4, "grid.n_points"),
            ("[model]\nepsilon = 0.1\n[states]\nket = thermal\n", 4, "states.ket"),
            ("[model]\nepsilon = 0.1\n[experiment]\neps_list = 0.1, 0.2\n", 4, "experiment.eps_list"),
            ("[model]\nepsilon = 0.1\n[experiment]\ntau_pairs = 1-0\n", 4, "experiment.tau_pairs"),
            ("[model]\nepsilon = 0.1\n[experiment]\nproduct_kind = weyl\n", 4, "experiment.product_kind"),
            ("[model]\nepsilon = 0.1\n[experiment]\nobservables = phi(1); foo(2)\n", 4, "experiment.observables"),
            ("[model]\nepsilon = 0.1\n[experiment]\nobservables = qmul(phi(0), phi(2))\n", 4, "experiment.observables"),
            ("epsilon = 0.1\n", 1, "epsilon"),
        ],
    )
    def test_errors_name_line_and_field(self, text, line, field):
        with pytest.raises(ConfigError) as exc_info:
            parse_config_text(text)
        assert exc_info.value.line == line
        assert exc_info.value.field == field
        assert str(exc_info.value).startswith(f"line {line}, {field}: ")

    def test_line_without_assignment(self):
        with pytest.raises(ConfigError, match="key = value") as exc_info:
            parse_config_text("[model]\nepsilon 0.1\n")
        assert exc_info.value.line == 2

    def test_missing_epsilon(self):
        with pytest.raises(ConfigError, match="model.epsilon: missing required key") as exc_info:
            parse_config_text("[model]\nmu2 = 1.0\n")
        assert exc_info.value.line is None

    def test_v_table_checks(self):
        with pytest.raises(ConfigError, match="phi_max"):
            parse_config_text("[model]\nepsilon = 0.1\nv_table = 1, 0, 1\n[grid]\nn_points = 3\n")
        with pytest.raises(ConfigError, match="one value per grid point"):
            parse_config_text("[model]\nepsilon = 0.1\nv_table = 1, 0, 1\n[grid]\nn_points = 5\nphi_max = 1.0\n")


class TestExperimentConfig:

    def test_build_grid(self):
        config = parse_config_text(FULL_CONFIG)
        grid = config.build_grid()
        assert grid.n_points == 240
        assert grid.points[-1] == pytest.approx(6.0)

    def test_default_phi_max(self):
        grid = parse_config_text("[model]\nepsilon = 0.1\n").build_grid()
        assert grid.is_symmetric
        assert grid.points[-1] > 3.0

    def test_build_params(self):
        config = parse_config_text(FULL_CONFIG)
        params = config.build_params()
        assert params.epsilon == 0.02 and params.n_sites == 120
        assert params.is_uniform
        assert config.build_params(epsilon=0.05).epsilon == 0.05

    def test_tabulated_potential(self):
        config = parse_config_text("[model]\nepsilon = 0.1\nv_table = 1, 0, 1\n[grid]\nn_points = 3\nphi_max = 1.0\n")
        grid = config.build_grid()
        params = config.build_params(grid)
        assert np.allclose(params.potential_at(0)(grid.points), [1.0, 0.0, 1.0])

    def test_lines_are_recorded(self):
        config = parse_config_text(FULL_CONFIG)
        assert (config.lines["model.epsilon"], config.lines["experiment.tau_pairs"]) == (4, 21)
        assert "grid.phi_min" not in config.lines
        assert config == parse_config_text("\n" + FULL_CONFIG)

    def test_tau_sites(self):
        config = parse_config_text(FULL_CONFIG)
        assert config.tau_sites(config.build_params(config.build_grid())) == [(110, 60), (60, 110)]

    @pytest.mark.parametrize("pairs, message", [("0.005:0", "multiple of epsilon"), ("0:-5", "window")])
    def test_invalid_tau_sites(self, pairs, message):
        config = parse_config_text(FULL_CONFIG.replace("1:0, 0:1", pairs))
        with pytest.raises(ConfigError, match=message) as exc_info:
            config.tau_sites(config.build_params(config.build_grid()))
        assert (exc_info.value.line, exc_info.value.field) == (21, "experiment.tau_pairs")

    def test_observable_exprs(self):
        config = parse_config_text(FULL_CONFIG)
        assert config.observable_exprs(0, 3) == [parse_observable("phi(1)"), parse_observable("mul(phi(2), phi(1))")]
        with pytest.raises(ConfigError, match="outside the window") as exc_info:
            config.observable_exprs(0, 1)
        assert (exc_info.value.line, exc_info.value.field) == (23, "experiment.observables")

    def test_check_levels(self):
        config = parse_config_text(FULL_CONFIG)
        assert config.check_levels(240) == 6
        with pytest.raises(ConfigError, match="levels must not exceed") as exc_info:
            config.check_levels(5)
        assert (exc_info.value.line, exc_info.value.field) == (19, "experiment.levels")

    def test_config_fields(self):
        assert config_fields("grid") == ["n_points", "phi_max", "phi_min"]
        assert "max_configs" in config_fields("experiment")


class TestLoadConfig:

    def test_reads_file(self, tmp_path):
        path = tmp_path / "harmonic.cfg"
        path.write_text(FULL_CONFIG, encoding="utf-8")
        assert isinstance(load_config(path), ExperimentConfig)
        assert load_config(str(path)) == parse_config_text(FULL_CONFIG)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "absent.cfg")
