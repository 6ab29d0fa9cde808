"""Functions for the one-step transfer kernel and the grid/epsilon coupling rule."""

# License: BSD 3-clause

import logging
import math
import warnings

import numpy as np

from qcorr.exceptions import GridCouplingError
from qcorr.lattice.action import log_link_weight
from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams
from qcorr.operators.operator_matrix import OperatorMatrix

# Coupling ratio 9 h^2 Z / eps: at most 1 resolves the kinetic Gaussian, above this the grid is refused.
COUPLING_WARN_RATIO = 1.0
COUPLING_ERROR_RATIO = 5.0


def step_kernel(params: ModelParams, grid: FieldGrid, site: int | None = None) -> OperatorMatrix:
    """
    One-step evolution operator from `site` to `site + 1`,

    .. math::

        K(\\phi_2, \\phi_1) = \\sqrt{\\frac{Z}{2\\pi\\epsilon}}
        \\exp\\left[-\\frac{\\epsilon}{2}(V_{n+1}(\\phi_2) + V_n(\\phi_1)) - \\frac{Z}{2\\epsilon}(\\phi_2 - \\phi_1)^2\\right]

    with Z the link coefficient. The kernel is symmetric when the potential and Z are site-independent.

    Parameters
    ----------
    params : ModelParams
        Model parameters.
    grid : FieldGrid
        Field grid.
    site : int | None, default=None
        Lower site of the link. Defaults to the first site of the window.

    Returns
    -------
    OperatorMatrix
        The kernel with the rectangle-rule weight absorbed.
    """
    site = params.first_site if site is None else site
    return OperatorMatrix.from_kernel(np.exp(log_link_weight(params, grid, site)), grid, f"T({site + 1},{site})")


def coupling_ratio(spacing: float, epsilon: float, z: float) -> float:
    """Ratio ``9 spacing^2 Z / epsilon``; the kinetic Gaussian is resolved when it is at most 1."""
    return 9.0 * spacing**2 * z / epsilon


def max_spacing(epsilon: float, z: float) -> float:
    """Largest grid spacing that resolves the kinetic Gaussian, ``sqrt(epsilon / Z) / 3``."""
    return math.sqrt(epsilon / z) / 3.0


def check_grid_coupling(grid: FieldGrid, epsilon: float, z: float) -> float:
    """
    Enforce the grid/epsilon coupling rule ``spacing <= sqrt(epsilon / Z) / 3``.

    Ratios between 1 and 5 pass with a `RuntimeWarning`; larger ratios are refused.

    Parameters
    ----------
    grid : FieldGrid
        Field grid.
    epsilon : float
        Lattice spacing.
    z : float
        Kinetic coefficient.

    Returns
    -------
    float
        The coupling ratio.

    Raises
    ------
    GridCouplingError
        If the ratio exceeds 5.
    """
    ratio = coupling_ratio(grid.spacing, epsilon, z)
    if ratio > COUPLING_ERROR_RATIO:
        raise GridCouplingError(
            f"Grid spacing {grid.spacing:.4g} does not resolve the step kernel at epsilon={epsilon}, Z={z}: "
            f"coupling ratio {ratio:.3g} > {COUPLING_ERROR_RATIO}; use spacing <= {max_spacing(epsilon, z):.4g}",
            ratio=ratio,
        )
    if ratio > COUPLING_WARN_RATIO:
        message = f"Grid spacing {grid.spacing:.4g} under-resolves the step kernel at epsilon={epsilon}, Z={z} (ratio {ratio:.3g})"
        logging.warning(message)
        warnings.warn(message, RuntimeWarning, stacklevel=2)
    return ratio


def refine_grid(grid: FieldGrid, epsilon: float, z: float, max_points: int = 4001) -> FieldGrid:
    """
    Grid over the same field range with enough points to satisfy the coupling rule.

    The grid is returned unchanged when it already resolves the kernel.

    Raises
    ------
    GridCouplingError
        If resolving the kernel would need more than `max_points` points.
    """
    if coupling_ratio(grid.spacing, epsilon, z) <= COUPLING_WARN_RATIO:
        return grid

    width = grid.phi_max - grid.phi_min
    n_points = int(math.ceil(width / max_spacing(epsilon, z) * (1.0 + 1e-9))) + 1
    if n_points > max_points:
        raise GridCouplingError(
            f"Resolving epsilon={epsilon} on [{grid.phi_min}, {grid.phi_max}] needs {n_points} points (max {max_points})",
            ratio=coupling_ratio(grid.spacing, epsilon, z),
        )
    logging.info(f"Refined grid from {grid.n_points} to {n_points} points for epsilon={epsilon}")
    return grid.with_points(n_points)
