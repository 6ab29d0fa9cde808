"""Classes for running the experiments and saving their result tables."""

# License: BSD 3-clause

from .utils import build_data_filename, csv_text, write_csv
from .spectrum_runner import SpectrumRunner
from .ambiguity_runner import AmbiguityRunner
from .correlation_runner import CorrelationRunner
from .oracle_runner import OracleCheckRunner, OracleModel
