"""Functions for the local action of the oscillator chain and the weight of a configuration."""

# License: BSD 3-clause

import math

import numpy as np

from qcorr.exceptions import BoundaryAccessError
from qcorr.lattice.configuration import LatticeConfiguration
from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams


def local_lagrangian(config: LatticeConfiguration, site: int, params: ModelParams, grid: FieldGrid) -> float:
    """
    Local Lagrangian of an interior site,

    .. math::

        L_n = V_n(\\phi_n) + \\frac{Z_n}{4\\epsilon^2}\\left[(\\phi_{n+1} - \\phi_n)^2 + (\\phi_n - \\phi_{n-1})^2\\right].

    Parameters
    ----------
    config : LatticeConfiguration
        Configuration holding the site and both of its neighbours.
    site : int
        Site label.
    params : ModelParams
        Model parameters.
    grid : FieldGrid
        Field grid the configuration indexes into.

    Returns
    -------
    float
        The local Lagrangian.

    Raises
    ------
    BoundaryAccessError
        If `site` is on the edge of (or outside) the configuration.
    """
    if not (config.first_site < site < config.last_site):
        raise BoundaryAccessError(f"site {site} needs both neighbours inside the configuration {config.first_site}..{config.last_site}")

    below, here, above = (config.field_at(s, grid) for s in (site - 1, site, site + 1))
    kinetic = params.z_at(site) / (4.0 * params.epsilon**2) * ((above - here) ** 2 + (here - below) ** 2)
    return float(params.potential_at(site)(here)) + kinetic


def window_action(config: LatticeConfiguration, params: ModelParams, grid: FieldGrid) -> float:
    """
    Discrete action of a window, interior Lagrangians plus the half-weight boundary potentials and
    quarter-weight boundary kinetic terms.

    The boundary terms make the action additive over windows sharing a boundary site.

    Parameters
    ----------
    config : LatticeConfiguration
        Configuration spanning the window ``n1 .. n2`` with ``n2 >= n1 + 1``.
    params : ModelParams
        Model parameters.
    grid : FieldGrid
        Field grid the configuration indexes into.

    Returns
    -------
    float
        The window action.
    """
    if len(config) < 2:
        raise ValueError(f"A window needs at least 2 sites. Got {len(config)}")

    eps = params.epsilon
    n1, n2 = config.first_site, config.last_site
    phi = config.field_values(grid)

    interior = math.fsum(local_lagrangian(config, n, params, grid) for n in range(n1 + 1, n2))
    boundary_potential = 0.5 * eps * (float(params.potential_at(n2)(phi[-1])) + float(params.potential_at(n1)(phi[0])))
    boundary_kinetic = 0.25 * eps * (params.z_at(n2) * ((phi[-1] - phi[-2]) / eps) ** 2 + params.z_at(n1) * ((phi[1] - phi[0]) / eps) ** 2)

    return eps * interior + boundary_potential + boundary_kinetic


def log_measure(params: ModelParams, first_site: int, last_site: int) -> float:
    """Log of the product of one factor ``sqrt(Z / (2 pi eps))`` per link between `first_site` and `last_site`."""
    return math.fsum(0.5 * math.log(params.link_z(n) / (2.0 * math.pi * params.epsilon)) for n in range(first_site, last_site))


def log_config_weight(config: LatticeConfiguration, params: ModelParams, grid: FieldGrid) -> float:
    """Log of `config_weight`."""
    return log_measure(params, config.first_site, config.last_site) - window_action(config, params, grid)


def config_weight(config: LatticeConfiguration, params: ModelParams, grid: FieldGrid) -> float:
    """
    Unnormalised weight of a configuration: ``exp(-window_action)`` times one measure factor
    ``sqrt(Z_link / (2 pi epsilon))`` per link.

    Examples
    --------
    >>> params = ModelParams(epsilon=0.1, potential=QuarticPotential(mu2=0.0), z=1.0, n_sites=1)
    >>> grid = FieldGrid(n_points=3, phi_max=1.0)
    >>> round(config_weight(LatticeConfiguration([1, 1]), params, grid), 5)
    1.26157
    """
    return math.exp(log_config_weight(config, params, grid))


def log_link_weight(params: ModelParams, grid: FieldGrid, site: int) -> np.ndarray:
    """
    Log weight of the link between `site` and `site + 1` for every pair of grid values.

    The returned matrix is indexed ``[i_upper, i_lower]``; summing the link logs over a window
    reproduces `log_config_weight` exactly, because each site's potential is split evenly
    between its two links and each link carries the mean of its two kinetic coefficients.

    Parameters
    ----------
    params : ModelParams
        Model parameters.
    grid : FieldGrid
        Field grid.
    site : int
        Lower site of the link.

    Returns
    -------
    np.ndarray
        Matrix of shape ``(n_points, n_points)``.
    """
    eps = params.epsilon
    z = params.link_z(site)
    phi = grid.points
    v_lower = np.asarray(params.potential_at(site)(phi), dtype=float)
    v_upper = np.asarray(params.potential_at(site + 1)(phi), dtype=float)
    diff = phi[:, None] - phi[None, :]

    return 0.5 * math.log(z / (2.0 * math.pi * eps)) - 0.5 * eps * (v_upper[:, None] + v_lower[None, :]) - z / (2.0 * eps) * diff**2
