"""Class for a field configuration on a window of consecutive sites."""

# License: BSD 3-clause

from typing import Sequence

import numpy as np

from qcorr.lattice.field_grid import FieldGrid


class LatticeConfiguration:
    """
    Field configuration on consecutive sites, stored as grid indices.

    Parameters
    ----------
    values : Sequence[int]
        Grid index of the field on each site, ordered by increasing site label.
    first_site : int, default=0
        Label of the site holding ``values[0]``.

    Examples
    --------
    >>> grid = FieldGrid(n_points=3, phi_max=1.0)
    >>> config = LatticeConfiguration([0, 1, 2])
    >>> config.field_values(grid)
    array([-1.,  0.,  1.])
    """

    def __init__(self, values: Sequence[int], first_site: int = 0):
        values = np.asarray(values)
        if values.ndim != 1 or values.size == 0:
            raise ValueError(f"values must be a non-empty 1-D sequence of grid indices. Got shape {values.shape}")
        if not np.issubdtype(values.dtype, np.integer):
            raise TypeError(f"values must be integer grid indices. Got dtype {values.dtype}")
        if np.any(values < 0):
            raise ValueError("Grid indices must be non-negative.")

        self.values: np.ndarray = values.astype(np.int64)
        self.values.setflags(write=False)
        self.first_site: int = int(first_site)

    @property
    def last_site(self) -> int:
        return self.first_site + self.values.size - 1

    @property
    def sites(self) -> range:
        return range(self.first_site, self.last_site + 1)

    def __len__(self) -> int:
        return int(self.values.size)

    def contains(self, site: int) -> bool:
        return self.first_site <= site <= self.last_site

    def check_grid(self, grid: FieldGrid) -> None:
        if np.any(self.values >= grid.n_points):
            raise ValueError(f"Every grid index must be < n_points={grid.n_points}. Got max index {int(self.values.max())}")

    def field_values(self, grid: FieldGrid) -> np.ndarray:
        """Field value on every site of the configuration."""
        self.check_grid(grid)
        return grid.points[self.values]

    def field_at(self, site: int, grid: FieldGrid) -> float:
        if not self.contains(site):
            raise IndexError(f"site {site} is outside the configuration {self.first_site}..{self.last_site}")
        return float(grid.points[self.values[site - self.first_site]])

    def window(self, first_site: int, last_site: int) -> "LatticeConfiguration":
        """Restrict the configuration to the sites ``first_site .. last_site``."""
        if not (self.first_site <= first_site <= last_site <= self.last_site):
            raise ValueError(f"Sub-window {first_site}..{last_site} is not inside {self.first_site}..{self.last_site}")
        start = first_site - self.first_site
        return LatticeConfiguration(self.values[start : start + last_site - first_site + 1], first_site)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(values={self.values.tolist()}, first_site={self.first_site})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeConfiguration):
            return False
        return self.first_site == other.first_site and np.array_equal(self.values, other.values)
