"""Classes for grid-discretised operators and their spectral decompositions."""

# License: BSD 3-clause

from typing import Any

import numpy as np

from qcorr.exceptions import GridMismatchError
from qcorr.lattice.field_grid import FieldGrid


class OperatorMatrix:
    """
    Real square matrix acting on functions sampled on a `FieldGrid`.

    Integral kernels are stored with the rectangle-rule weight absorbed: a kernel K(phi2, phi1)
    is stored as ``K * spacing``, so products of operators and their action on grid functions are
    plain matrix products, and the identity matrix stands for delta(phi2 - phi1). Differential
    and multiplicative operators (Q, P^2, R, H) are stored as they act.

    Parameters
    ----------
    entries : np.ndarray
        Matrix of shape ``(grid.n_points, grid.n_points)``.
    grid : FieldGrid
        Grid the operator acts on.
    label : str, default=""
        Optional name used in reprs and log messages.

    Attributes
    ----------
    entries : np.ndarray
        Read-only matrix entries.
    grid : FieldGrid
        Grid the operator acts on.
    label : str
        Operator name.
    """

    def __init__(self, entries: np.ndarray, grid: FieldGrid, label: str = ""):
        if not isinstance(grid, FieldGrid):
            raise TypeError(f"grid must be a FieldGrid. Got {type(grid).__name__}")
        entries = np.array(entries, dtype=float)
        if entries.shape != (grid.n_points, grid.n_points):
            raise ValueError(f"entries must have shape ({grid.n_points}, {grid.n_points}). Got {entries.shape}")
        entries.setflags(write=False)

        self.entries: np.ndarray = entries
        self.grid: FieldGrid = grid
        self.label: str = label

    @classmethod
    def from_kernel(cls, kernel: np.ndarray, grid: FieldGrid, label: str = "") -> "OperatorMatrix":
        """Build an operator from kernel values K(phi2, phi1) by absorbing the rectangle-rule weight."""
        return cls(np.asarray(kernel, dtype=float) * grid.spacing, grid, label)

    @property
    def kernel(self) -> np.ndarray:
        """Kernel values K(phi2, phi1), i.e. the entries with the integration weight removed."""
        return self.entries / self.grid.spacing

    @property
    def dimension(self) -> int:
        return self.grid.n_points

    @property
    def T(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.T, self.grid, f"{self.label}^T" if self.label else "")

    def trace(self) -> float:
        return float(np.trace(self.entries))

    def is_symmetric(self, tol: float = 1e-10) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.entries))))
        return bool(np.max(np.abs(self.entries - self.entries.T)) <= tol * scale)

    def check_grid(self, other: Any) -> None:
        if isinstance(other, OperatorMatrix) and other.grid != self.grid:
            raise GridMismatchError(f"Operators live on different grids: {self.grid!r} and {other.grid!r}")

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Act on a grid function."""
        values = np.asarray(values, dtype=float)
        if values.shape != (self.dimension,):
            raise ValueError(f"Grid function must have shape ({self.dimension},). Got {values.shape}")
        return self.entries @ values

    def __matmul__(self, other: Any) -> "OperatorMatrix | np.ndarray":
        if isinstance(other, OperatorMatrix):
            self.check_grid(other)
            return OperatorMatrix(self.entries @ other.entries, self.grid)
        return self.apply(other)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self.check_grid(other)
        return OperatorMatrix(self.entries + other.entries, self.grid)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self.check_grid(other)
        return OperatorMatrix(self.entries - other.entries, self.grid)

    def __neg__(self) -> "OperatorMatrix":
        return OperatorMatrix(-self.entries, self.grid)

    def __mul__(self, scalar: float) -> "OperatorMatrix":
        if not np.isscalar(scalar):
            return NotImplemented
        return OperatorMatrix(float(scalar) * self.entries, self.grid)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "OperatorMatrix":
        if not np.isscalar(scalar):
            return NotImplemented
        return OperatorMatrix(self.entries / float(scalar), self.grid)

    def __repr__(self) -> str:
        name = self.label or "operator"
        return f"{self.__class__.__name__}({name}, n_points={self.dimension})"


class SpectralDecomposition:
    """
    Real eigensystem of a symmetric `OperatorMatrix`.

    Parameters
    ----------
    eigenvalues : np.ndarray
        Eigenvalues in ascending order.
    eigenvectors : np.ndarray
        Orthonormal eigenvectors as columns, ``eigenvectors[:, n]`` belonging to ``eigenvalues[n]``.
    grid : FieldGrid
        Grid of the decomposed operator.
    """

    def __init__(self, eigenvalues: np.ndarray, eigenvectors: np.ndarray, grid: FieldGrid):
        eigenvalues = np.asarray(eigenvalues, dtype=float)
        eigenvectors = np.asarray(eigenvectors, dtype=float)
        if eigenvectors.shape != (grid.n_points, eigenvalues.size):
            raise ValueError(f"eigenvectors must have shape ({grid.n_points}, {eigenvalues.size}). Got {eigenvectors.shape}")
        if np.any(np.diff(eigenvalues) < 0):
            raise ValueError("eigenvalues must be sorted in ascending order.")

        self.eigenvalues: np.ndarray = eigenvalues
        self.eigenvectors: np.ndarray = eigenvectors
        self.grid: FieldGrid = grid

    def __len__(self) -> int:
        return int(self.eigenvalues.size)

    def reconstruct(self) -> OperatorMatrix:
        """Sum of ``E_n v_n v_n^T`` over all levels."""
        return OperatorMatrix((self.eigenvectors * self.eigenvalues) @ self.eigenvectors.T, self.grid)

    def reconstruction_error(self, op: OperatorMatrix) -> float:
        """Relative 2-norm error of `reconstruct` against the decomposed operator."""
        norm = np.linalg.norm(op.entries, 2)
        return float(np.linalg.norm(op.entries - self.reconstruct().entries, 2) / (norm if norm > 0 else 1.0))

    def residuals(self, op: OperatorMatrix) -> np.ndarray:
        """``||A v_n - E_n v_n||`` for every level."""
        return np.linalg.norm(op.entries @ self.eigenvectors - self.eigenvectors * self.eigenvalues, axis=0)

    def wavefunction(self, level: int) -> np.ndarray:
        """Eigenvector `level` as a grid function normalised to ``spacing * sum(psi**2) = 1``."""
        return self.eigenvectors[:, level] / np.sqrt(self.grid.spacing)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(n_levels={len(self)})"
