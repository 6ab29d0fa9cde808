"""Classes and functions for the geometry, parameters and local action of the oscillator chain."""

# License: BSD 3-clause

from .field_grid import FieldGrid, default_phi_max
from .model_params import ModelParams, QuarticPotential, TabulatedPotential
from .configuration import LatticeConfiguration
from .action import local_lagrangian, window_action, config_weight, log_config_weight, log_link_weight, log_measure
