"""Classes and functions for reading experiment configuration files.

The format is a flat ``key = value`` text with the sections ``[model]``, ``[grid]``, ``[states]``
and ``[experiment]``. Blank lines and ``#`` comments are ignored. Unknown sections or keys,
duplicated keys and unparsable values are errors carrying the line number and the field name.

Example::

    [model]
    epsilon = 0.1
    mu2 = 1.0
    lam = 0.0
    n_sites = 6

    [grid]
    n_points = 121
    phi_max = 6.0

    [experiment]
    levels = 4
"""

# License: BSD 3-clause

import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Callable

import numpy as np

from qcorr.exceptions import ConfigError
from qcorr.lattice.field_grid import FieldGrid, default_phi_max
from qcorr.lattice.model_params import ModelParams, QuarticPotential, TabulatedPotential
from qcorr.observables.expr import ObservableExpr
from qcorr.observables.parser import parse_observable

PRODUCT_KINDS = ("classical", "quantum", "quantum-antiordered")
STATE_KINDS = ("ground", "uniform", "gaussian")
DEFAULT_OBSERVABLES = ("phi(1)", "phi2(1)", "mul(phi(2), phi(1))", "mul(dfwd(1), dfwd(1))", "mul(dsym(2), dsym(2))")


@dataclass(frozen=True)
class ModelSection:
    epsilon: float
    mu2: float = 1.0
    lam: float = 0.0
    z: float = 1.0
    n_sites: int = 8
    v_table: tuple[float, ...] | None = None


@dataclass(frozen=True)
class GridSection:
    n_points: int = 201
    phi_max: float | None = None
    phi_min: float | None = None


@dataclass(frozen=True)
class StatesSection:
    bra: str = "ground"
    ket: str = "ground"
    bra_width: float = 1.0
    ket_width: float = 1.0


@dataclass(frozen=True)
class ExperimentSection:
    levels: int = 4
    eps_list: tuple[float, ...] = ()
    tau_pairs: tuple[tuple[float, float], ...] = ()
    product_kind: str = "quantum"
    observables: tuple[str, ...] = DEFAULT_OBSERVABLES
    seed: int = 12
    n_models: int = 5
    oracle_sites: int = 2
    oracle_points: int = 8
    oracle_phi_max: float = 2.0
    subspace_levels: int = 10
    max_configs: int = 10**8


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Parsed experiment configuration.

    Attributes
    ----------
    model : ModelSection
        Model parameters.
    grid : GridSection
        Field grid.
    states : StatesSection
        Boundary states.
    experiment : ExperimentSection
        Experiment-specific settings.
    lines : dict[str, int]
        Line number of every ``section.key`` entry read from the file.
    """

    model: ModelSection
    grid: GridSection = field(default_factory=GridSection)
    states: StatesSection = field(default_factory=StatesSection)
    experiment: ExperimentSection = field(default_factory=ExperimentSection)
    lines: dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    def error(self, message: str, field_name: str) -> ConfigError:
        """ConfigError for a field, located at the line it was read from."""
        return ConfigError(message, line=self.lines.get(field_name), field=field_name)

    def observable_exprs(self, first_site: int, last_site: int) -> list[ObservableExpr]:
        """Configured observables, parsed and checked against the window ``first_site..last_site``."""
        exprs = []
        for text in self.experiment.observables:
            try:
                a = parse_observable(text)
                a.check_support(first_site, last_site)
            except ValueError as e:
                raise self.error(f"invalid observable {text!r}: {e}", "experiment.observables") from e
            exprs.append(a)
        return exprs

    def tau_sites(self, params: ModelParams) -> list[tuple[int, int]]:
        """Sites of the configured ``tau_pairs``; every time must be a multiple of epsilon inside the window."""
        if not self.experiment.tau_pairs:
            raise self.error("the correlation table needs at least one t1:t2 pair", "experiment.tau_pairs")
        sites = []
        for tau_1, tau_2 in self.experiment.tau_pairs:
            try:
                sites.append((params.tau_site(tau_1), params.tau_site(tau_2)))
            except ValueError as e:
                raise self.error(f"invalid pair {tau_1}:{tau_2}: {e}", "experiment.tau_pairs") from e
        return sites

    def check_levels(self, n_points: int) -> int:
        """Configured number of levels, which must not exceed the number of grid points."""
        levels = self.experiment.levels
        if levels > n_points:
            raise self.error(f"levels must not exceed the number of grid points ({n_points}). Got {levels}", "experiment.levels")
        return levels

    def build_grid(self) -> FieldGrid:
        """Field grid of the configuration, with the default truncation when ``phi_max`` is absent."""
        phi_max = self.grid.phi_max
        if phi_max is None:
            phi_max = default_phi_max(QuarticPotential(self.model.mu2, self.model.lam), self.model.epsilon)
            logging.info(f"Using default phi_max = {phi_max:.6g}")
        return FieldGrid(self.grid.n_points, phi_max, self.grid.phi_min)

    def build_params(self, grid: FieldGrid | None = None, epsilon: float | None = None) -> ModelParams:
        """Model parameters, optionally at another lattice spacing."""
        if self.model.v_table is None:
            potential = QuarticPotential(self.model.mu2, self.model.lam)
        else:
            grid = self.build_grid() if grid is None else grid
            potential = TabulatedPotential(grid.points, self.model.v_table)
        return ModelParams(self.model.epsilon if epsilon is None else epsilon, potential, self.model.z, self.model.n_sites)


def _float(text: str) -> float:
    value = float(text)
    if not np.isfinite(value):
        raise ValueError(f"must be finite. Got {text}")
    return value


def _positive_float(text: str) -> float:
    value = _float(text)
    if value <= 0:
        raise ValueError(f"must be greater than 0. Got {text}")
    return value


def _non_negative_float(text: str) -> float:
    value = _float(text)
    if value < 0:
        raise ValueError(f"must be non-negative. Got {text}")
    return value


def _int_at_least(minimum: int) -> Callable[[str], int]:
    def parse(text: str) -> int:
        value = int(text)
        if value < minimum:
            raise ValueError(f"must be an integer >= {minimum}. Got {text}")
        return value

    return parse


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(_float(part) for part in text.split(",") if part.strip())


def _decreasing_list(text: str) -> tuple[float, ...]:
    values = tuple(_positive_float(part) for part in text.split(",") if part.strip())
    if not values:
        raise ValueError("must list at least one value.")
    if any(b >= a for a, b in zip(values, values[1:])):
        raise ValueError(f"must be strictly decreasing. Got {list(values)}")
    return values


def _tau_pairs(text: str) -> tuple[tuple[float, float], ...]:
    pairs = []
    for part in text.split(","):
        if not part.strip():
            continue
        tau_1, tau_2 = part.split(":")
        pairs.append((_float(tau_1), _float(tau_2)))
    if not pairs:
        raise ValueError("must list at least one t1:t2 pair.")
    return tuple(pairs)


def _choice(options: tuple[str, ...]) -> Callable[[str], str]:
    def parse(text: str) -> str:
        if text not in options:
            raise ValueError(f"must be one of {list(options)}. Got {text}")
        return text

    return parse


def _observables(text: str) -> tuple[str, ...]:
    values = tuple(part.strip() for part in text.split(";") if part.strip())
    if not values:
        raise ValueError("must list at least one observable.")
    for value in values:
        parse_observable(value)
    return values


_SECTIONS: dict[str, tuple[type, dict[str, Callable[[str], Any]]]] = {
    "model": (
        ModelSection,
        {
            "epsilon": _positive_float,
            "mu2": _float,
            "lam": _non_negative_float,
            "z": _positive_float,
            "n_sites": _int_at_least(1),
            "v_table": _float_list,
        },
    ),
    "grid": (GridSection, {"n_points": _int_at_least(3), "phi_max": _positive_float, "phi_min": _float}),
    "states": (
        StatesSection,
        {"bra": _choice(STATE_KINDS), "ket": _choice(STATE_KINDS), "bra_width": _positive_float, "ket_width": _positive_float},
    ),
    "experiment": (
        ExperimentSection,
        {
            "levels": _int_at_least(1),
            "eps_list": _decreasing_list,
            "tau_pairs": _tau_pairs,
            "product_kind": _choice(PRODUCT_KINDS),
            "observables": _observables,
            "seed": _int_at_least(0),
            "n_models": _int_at_least(1),
            "oracle_sites": _int_at_least(1),
            "oracle_points": _int_at_least(3),
            "oracle_phi_max": _positive_float,
            "subspace_levels": _int_at_least(1),
            "max_configs": _int_at_least(1),
        },
    ),
}


def parse_config_text(text: str) -> ExperimentConfig:
    """
    Parse the text of a configuration file.

    Parameters
    ----------
    text : str
        File contents.

    Returns
    -------
    ExperimentConfig
        The parsed configuration.

    Raises
    ------
    ConfigError
        On unknown sections or keys, duplicated keys, bad values or a missing ``model.epsilon``.
    """
    values: dict[str, dict[str, Any]] = {name: {} for name in _SECTIONS}
    lines: dict[str, int] = {}
    section: str | None = None

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in _SECTIONS:
                raise ConfigError(f"unknown section [{section}]", line=number, field=section)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value'. Got {line!r}", line=number)
        key, value = (part.strip() for part in line.split("=", 1))
        if section is None:
            raise ConfigError("key outside of any section", line=number, field=key)

        name = f"{section}.{key}"
        parsers = _SECTIONS[section][1]
        if key not in parsers:
            raise ConfigError("unknown key", line=number, field=name)
        if key in values[section]:
            raise ConfigError("duplicate key", line=number, field=name)
        try:
            values[section][key] = parsers[key](value)
        except ValueError as e:
            raise ConfigError(f"invalid value {value!r}: {e}", line=number, field=name) from e
        lines[name] = number

    if "epsilon" not in values["model"]:
        raise ConfigError("missing required key", field="model.epsilon")
    if "v_table" in values["model"] and "phi_max" not in values["grid"]:
        raise ConfigError("v_table needs an explicit grid.phi_max", field="grid.phi_max")
    if "v_table" in values["model"]:
        n_points = values["grid"].get("n_points", GridSection.n_points)
        if len(values["model"]["v_table"]) != n_points:
            raise ConfigError(f"v_table needs one value per grid point ({n_points})", field="model.v_table")

    sections = {name: cls(**values[name]) for name, (cls, _) in _SECTIONS.items()}
    return ExperimentConfig(**sections, lines=lines)


def load_config(path: str | Path) -> ExperimentConfig:
    """Read and parse a configuration file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read configuration file {path}: {e}") from e
    return parse_config_text(text)


def config_fields(section: str) -> list[str]:
    """Keys accepted in a section."""
    return [f.name for f in fields(_SECTIONS[section][0])]
