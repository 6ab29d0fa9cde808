"""Exact brute-force configuration sums and exterior fixtures."""

# License: BSD 3-clause

from .brute_force import DEFAULT_MAX_CONFIGS, ExteriorWeights, brute_expectation, brute_expectations, count_configurations
from .exterior import (
    IrrelevanceReport,
    chain_exterior,
    exterior_irrelevance_check,
    gaussian_exterior,
    integrated_exterior,
    state_discrepancy,
)
