"""Convergence check of the step kernel against the Hamiltonian as epsilon goes to zero."""

# License: BSD 3-clause

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import pandas as pd

from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams
from qcorr.operators.algebra import spectral
from qcorr.operators.builders import build_H
from qcorr.evolution.step_kernel import check_grid_coupling, refine_grid, step_kernel


@dataclass(frozen=True)
class ConvergenceReport:
    """
    Deviation of ``(1 - T) / epsilon`` from H on a low-energy subspace, for a decreasing sequence of epsilon.

    Attributes
    ----------
    epsilons : tuple[float, ...]
        The epsilon values, strictly decreasing.
    deviations : tuple[float, ...]
        Spectral-norm deviation on the span of the lowest `levels` eigenvectors of H.
    transfer_energies : tuple[float, ...]
        ``-ln(lambda_max(T)) / epsilon`` for every epsilon.
    hamiltonian_energies : tuple[float, ...]
        Lowest eigenvalue of H on the grid used for every epsilon.
    n_points : tuple[int, ...]
        Grid size used for every epsilon.
    coupling_ratios : tuple[float, ...]
        Grid coupling ratio for every epsilon.
    levels : int
        Dimension of the low-energy subspace.
    """

    epsilons: tuple[float, ...]
    deviations: tuple[float, ...]
    transfer_energies: tuple[float, ...]
    hamiltonian_energies: tuple[float, ...]
    n_points: tuple[int, ...]
    coupling_ratios: tuple[float, ...]
    levels: int = field(default=4)

    @property
    def ratios(self) -> tuple[float, ...]:
        """Deviation ratios between consecutive epsilon values; about 2 for halving epsilon at first order."""
        return tuple(a / b for a, b in zip(self.deviations[:-1], self.deviations[1:]))

    @property
    def is_decreasing(self) -> bool:
        return all(a > b for a, b in zip(self.deviations[:-1], self.deviations[1:]))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "epsilon": self.epsilons,
                "n_points": self.n_points,
                "coupling_ratio": self.coupling_ratios,
                "deviation": self.deviations,
                "E_0_transfer": self.transfer_energies,
                "E_0": self.hamiltonian_energies,
            }
        )


def _dominant_eigenvalue(entries: np.ndarray) -> float:
    if np.allclose(entries, entries.T, rtol=0.0, atol=1e-14 * float(np.max(np.abs(entries)))):
        return float(np.linalg.eigvalsh(entries)[-1])
    return float(np.max(np.linalg.eigvals(entries).real))


def hamiltonian_consistency(
    params: ModelParams, grid: FieldGrid, eps_sequence: Sequence[float], levels: int = 4, site: int | None = None, refine: bool = True
) -> ConvergenceReport:
    """
    Compare the one-step kernel with the Hamiltonian for a decreasing sequence of epsilon.

    For every epsilon the deviation ``|| S^T [(1 - T) / epsilon - H] S ||`` is measured on the span S of
    the lowest `levels` eigenvectors of H; it shrinks linearly in epsilon.

    Parameters
    ----------
    params : ModelParams
        Model parameters; epsilon is replaced by each entry of `eps_sequence`.
    grid : FieldGrid
        Field grid, refined per epsilon when `refine` is set.
    eps_sequence : Sequence[float]
        Strictly decreasing epsilon values.
    levels : int, default=4
        Dimension of the low-energy subspace. ``levels=1`` compares ground-state energies.
    site : int | None, default=None
        Site whose coefficients define H and the kernel. Defaults to the centre site.
    refine : bool, default=True
        Refine the grid so that ``spacing <= sqrt(epsilon / Z) / 3`` for every epsilon.

    Returns
    -------
    ConvergenceReport
        Per-epsilon deviations and energies.

    Raises
    ------
    GridCouplingError
        If a grid violates the coupling rule beyond its warning tier.
    """
    eps_sequence = [float(e) for e in eps_sequence]
    if len(eps_sequence) == 0:
        raise ValueError("eps_sequence must not be empty.")
    if any(e <= 0 for e in eps_sequence):
        raise ValueError(f"Every epsilon must be greater than 0. Got {eps_sequence}")
    if any(a <= b for a, b in zip(eps_sequence[:-1], eps_sequence[1:])):
        raise ValueError(f"eps_sequence must be strictly decreasing. Got {eps_sequence}")
    if levels < 1 or levels > grid.n_points:
        raise ValueError(f"levels must be between 1 and n_points={grid.n_points}. Got {levels}")

    site = params.center_site if site is None else site
    deviations, transfer_energies, hamiltonian_energies, n_points, ratios = [], [], [], [], []

    for eps in eps_sequence:
        model = params.replace(epsilon=eps)
        z = model.link_z(min(site, model.last_site - 1))
        eps_grid = refine_grid(grid, eps, z) if refine else grid
        ratio = check_grid_coupling(eps_grid, eps, z)

        hamiltonian = build_H(model, eps_grid, site)
        decomposition = spectral(hamiltonian)
        basis = decomposition.eigenvectors[:, :levels]
        kernel = step_kernel(model, eps_grid, min(site, model.last_site - 1)).entries

        generator = (np.eye(eps_grid.n_points) - kernel) / eps - hamiltonian.entries
        deviation = float(np.linalg.norm(basis.T @ generator @ basis, 2))
        transfer_energy = -math.log(_dominant_eigenvalue(kernel)) / eps

        logging.info(f"epsilon={eps}: n_points={eps_grid.n_points}, deviation={deviation:.6g}, E_0(T)={transfer_energy:.6g}")
        deviations.append(deviation)
        transfer_energies.append(transfer_energy)
        hamiltonian_energies.append(float(decomposition.eigenvalues[0]))
        n_points.append(eps_grid.n_points)
        ratios.append(ratio)

    return ConvergenceReport(
        epsilons=tuple(eps_sequence),
        deviations=tuple(deviations),
        transfer_energies=tuple(transfer_energies),
        hamiltonian_energies=tuple(hamiltonian_energies),
        n_points=tuple(n_points),
        coupling_ratios=tuple(ratios),
        levels=levels,
    )
