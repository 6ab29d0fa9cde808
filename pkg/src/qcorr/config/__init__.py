"""Experiment configuration files."""

# License: BSD 3-clause

from .experiment_config import (
    DEFAULT_OBSERVABLES,
    PRODUCT_KINDS,
    ExperimentConfig,
    ExperimentSection,
    GridSection,
    ModelSection,
    StatesSection,
    config_fields,
    load_config,
    parse_config_text,
)
