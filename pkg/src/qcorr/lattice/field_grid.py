"""Classes and functions for the discretised field axis shared by every operator, state and configuration sum."""

# License: BSD 3-clause

import math
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.optimize import brentq


class FieldGrid:
    """
    Uniform, truncated grid of field values phi with rectangle-rule integration weight.

    Every functional integral in qcorr is the rectangle rule on this grid, so the operator
    formalism and the brute-force configuration sums are the same finite sums.

    Parameters
    ----------
    n_points : int
        Number of grid points. Must be at least 3.
    phi_max : float
        Upper end of the field axis. Must be greater than `phi_min`.
    phi_min : float | None, default=None
        Lower end of the field axis. Defaults to ``-phi_max`` (a grid symmetric about 0).

    Attributes
    ----------
    n_points : int
        Number of grid points.
    phi_min : float
        Lowest field value.
    phi_max : float
        Highest field value.

    Examples
    --------
    >>> grid = FieldGrid(n_points=3, phi_max=1.0)
    >>> grid.points
    array([-1.,  0.,  1.])
    >>> grid.spacing
    1.0
    """

    def __init__(self, n_points: int, phi_max: float, phi_min: float | None = None):
        if not isinstance(n_points, (int, np.integer)) or isinstance(n_points, bool) or n_points < 3:
            raise ValueError(f"n_points must be an integer >= 3. Got {n_points}")
        phi_min = -phi_max if phi_min is None else phi_min
        if not (math.isfinite(phi_min) and math.isfinite(phi_max)):
            raise ValueError(f"Grid bounds must be finite. Got phi_min={phi_min}, phi_max={phi_max}")
        if phi_max <= phi_min:
            raise ValueError(f"phi_max must be greater than phi_min. Got phi_min={phi_min}, phi_max={phi_max}")

        self.n_points: int = int(n_points)
        self.phi_min: float = float(phi_min)
        self.phi_max: float = float(phi_max)

    @cached_property
    def points(self) -> np.ndarray:
        """Grid values, ascending."""
        points = np.linspace(self.phi_min, self.phi_max, self.n_points)
        points.setflags(write=False)
        return points

    @property
    def spacing(self) -> float:
        """Distance between adjacent grid points, also the rectangle-rule weight."""
        return (self.phi_max - self.phi_min) / (self.n_points - 1)

    @property
    def is_symmetric(self) -> bool:
        return self.phi_min == -self.phi_max

    def with_points(self, n_points: int) -> "FieldGrid":
        """Return a grid over the same field range with a different number of points."""
        return FieldGrid(n_points, self.phi_max, self.phi_min)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(n_points={self.n_points}, phi_max={self.phi_max}, phi_min={self.phi_min})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldGrid):
            return False
        return self.n_points == other.n_points and self.phi_min == other.phi_min and self.phi_max == other.phi_max

    def __hash__(self) -> int:
        return hash((self.n_points, self.phi_min, self.phi_max))


def default_phi_max(potential: Callable[[float], float], epsilon: float, threshold: float = 1e-12) -> float:
    """
    Smallest phi_max with ``exp(-epsilon * V(phi_max)) < threshold``.

    The potential must grow without bound for large |phi|; the root is bracketed by doubling.

    Parameters
    ----------
    potential : Callable[[float], float]
        The site potential V(phi).
    epsilon : float
        Lattice spacing. Must be greater than 0.
    threshold : float, default=1e-12
        Weight below which the truncated tail is considered negligible. Must be in (0, 1).

    Returns
    -------
    float
        The truncation point.

    Raises
    ------
    ValueError
        If the potential does not reach the required height (for instance V = 0).
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be greater than 0. Got {epsilon}")
    if not (0 < threshold < 1):
        raise ValueError(f"threshold must be between 0 and 1. Got {threshold}")

    target = -math.log(threshold) / epsilon

    def excess(phi: float) -> float:
        return min(float(potential(phi)), float(potential(-phi))) - target

    upper = 1.0
    while excess(upper) <= 0:
        upper *= 2.0
        if upper > 1e8:
            raise ValueError("The potential does not confine the field; give phi_max explicitly.")

    if excess(0.0) > 0:
        return upper
    return float(brentq(excess, 0.0, upper, xtol=1e-12))
