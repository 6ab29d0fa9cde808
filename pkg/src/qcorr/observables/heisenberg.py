"""Functions and classes mapping local observables to operators: Heisenberg images, window kernels and low-energy matrices."""

# License: BSD 3-clause

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams
from qcorr.operators.algebra import spectral
from qcorr.operators.operator_matrix import OperatorMatrix
from qcorr.evolution.evolve import EvolutionChain
from qcorr.evolution.step_kernel import step_kernel
from qcorr.states.expectation import _check_pair, evolve_state
from qcorr.states.state_vector import StateVector
from qcorr.observables.expr import ObservableExpr, classical_product


def _reference(params: ModelParams, reference_site: int | None) -> int:
    return params.center_site if reference_site is None else params.check_site(reference_site)


def _check_window(a: ObservableExpr, params: ModelParams) -> None:
    a.check_support(params.first_site, params.last_site)


def to_heisenberg(
    a: ObservableExpr, params: ModelParams, grid: FieldGrid, reference_site: int | None = None, chain: EvolutionChain | None = None
) -> OperatorMatrix:
    """
    Heisenberg operator of a local observable, taken at a reference site.

    Every term ``c * phi(s_k)^p_k ... phi(s_1)^p_1`` (sites descending) becomes the tau-ordered
    product ``G(r, s_k) Q^p_k G(s_k, s_(k-1)) ... Q^p_1 G(s_1, r)``, where ``G(a, b)`` is the forward
    evolution for ``a >= b`` and its dense inverse otherwise. Derivative factors are expanded into
    their defining differences before the map, so the result is linear over terms.

    Parameters
    ----------
    a : ObservableExpr
        Observable with support inside the window.
    params : ModelParams
        Model parameters.
    grid : FieldGrid
        Field grid.
    reference_site : int | None, default=None
        Site of the Heisenberg picture; the window centre by default.
    chain : EvolutionChain | None, default=None
        Evolution cache to reuse.

    Returns
    -------
    OperatorMatrix
        The Heisenberg operator.

    Raises
    ------
    SupportError
        If the support of `a` leaves the window.
    IllConditionedError
        If a needed inverse evolution fails its residual check.
    """
    _check_window(a, params)
    reference = _reference(params, reference_site)
    chain = EvolutionChain(params, grid) if chain is None else chain
    points = grid.points

    total = np.zeros((grid.n_points, grid.n_points))
    for coefficient, word in a.numeric_field_terms(params):
        entries = np.eye(grid.n_points)
        previous = reference
        for site, power in word:
            entries = entries @ chain.transport(previous, site).entries
            entries = entries * points**power
            previous = site
        entries = entries @ chain.transport(previous, reference).entries
        total += coefficient * entries

    return OperatorMatrix(total, grid, f"{a}@{reference}")


def window_operator(a: ObservableExpr, params: ModelParams, grid: FieldGrid, chain: EvolutionChain | None = None) -> tuple[OperatorMatrix, int, int]:
    """
    Kernel of an observable between the lowest and the highest site of its support.

    Field powers are inserted between forward step kernels, so no inverse evolution is needed.
    A constant observable becomes a multiple of the identity at the window centre.

    Returns
    -------
    tuple[OperatorMatrix, int, int]
        The kernel and its lower and upper site.
    """
    _check_window(a, params)
    chain = EvolutionChain(params, grid) if chain is None else chain
    support = a.support
    lo, hi = (params.center_site, params.center_site) if support is None else support
    points = grid.points

    total = np.zeros((grid.n_points, grid.n_points))
    for coefficient, word in a.numeric_field_terms(params):
        powers = dict(word)
        entries = np.diag(points ** powers.get(lo, 0))
        for site in range(lo, hi):
            entries = chain.step(site).entries @ entries
            entries = (points ** powers.get(site + 1, 0))[:, None] * entries
        total += coefficient * entries

    return OperatorMatrix(total, grid, f"{a}[{lo},{hi}]"), lo, hi


def schrodinger_operator(a: ObservableExpr, params: ModelParams, grid: FieldGrid, site: int | None = None, chain: EvolutionChain | None = None) -> OperatorMatrix:
    """Window kernel of `a` moved to `site` with forward and inverse evolution, ``G(site, hi) A G(lo, site)``."""
    reference = _reference(params, site)
    chain = EvolutionChain(params, grid) if chain is None else chain
    kernel, lo, hi = window_operator(a, params, grid, chain)
    entries = chain.transport(reference, hi).entries @ kernel.entries @ chain.transport(lo, reference).entries
    return OperatorMatrix(entries, grid, f"{a}_S@{reference}")


def time_ordered_image(
    a: ObservableExpr, b: ObservableExpr, params: ModelParams, grid: FieldGrid, reference_site: int | None = None, chain: EvolutionChain | None = None
) -> OperatorMatrix:
    """
    Operator image of the classical product, i.e. the tau-ordered product of the two Heisenberg operators.

    For observables that do not overlap the operator with the later support stands on the left,
    whatever the argument order; overlapping observables are mapped through their pointwise product.
    """
    chain = EvolutionChain(params, grid) if chain is None else chain
    if a.overlaps(b):
        return to_heisenberg(classical_product(a, b), params, grid, reference_site, chain)

    def order(x: ObservableExpr) -> tuple[int, int]:
        return x.support if x.support is not None else (params.first_site - 1, params.first_site - 1)

    lower, upper = sorted((a, b), key=order)
    image = to_heisenberg(upper, params, grid, reference_site, chain) @ to_heisenberg(lower, params, grid, reference_site, chain)
    image.label = f"T({a} {b})"
    return image


def _propagate(ket: np.ndarray, word: dict[int, int], start: int, stop: int, chain: EvolutionChain, points: np.ndarray) -> tuple[np.ndarray, float]:
    """Move a ket from `start` to `stop`, inserting field powers; returns the vector and its log scale."""
    values = np.array(ket, dtype=float)
    log_scale = 0.0
    for site in range(start, stop + 1):
        if site in word:
            values = values * points ** word[site]
        if site < stop:
            values = chain.step(site).entries @ values
        peak = float(np.max(np.abs(values)))
        if peak == 0:
            return values, -math.inf
        values /= peak
        log_scale += math.log(peak)
    return values, log_scale


def expect_observable(a: ObservableExpr, params: ModelParams, grid: FieldGrid, bra: StateVector, ket: StateVector, chain: EvolutionChain | None = None) -> float:
    """
    Expectation value of an observable between a ket below and a bra above its support.

    The ket is carried up through the window with field powers inserted at their sites and contracted
    with the bra; the same transport without insertions gives the normalisation. Vectors are
    rescaled at every step and the scales kept as logarithms, so long windows neither overflow nor
    need inverse evolution. States lying inside the support are first moved outward with `evolve_state`.

    Parameters
    ----------
    a : ObservableExpr
        Observable with support inside the window.
    params : ModelParams
        Model parameters.
    grid : FieldGrid
        Field grid.
    bra : StateVector
        Upper boundary state.
    ket : StateVector
        Lower boundary state.
    chain : EvolutionChain | None, default=None
        Evolution cache to reuse.

    Returns
    -------
    float
        The expectation value.
    """
    if bra.side != "bra" or ket.side != "ket":
        raise ValueError(f"Expected a bra and a ket. Got {bra.side} and {ket.side}")
    _check_window(a, params)
    chain = EvolutionChain(params, grid) if chain is None else chain
    support = a.support
    lo, hi = (ket.tau_site, ket.tau_site) if support is None else support
    if ket.tau_site > lo:
        ket = evolve_state(ket, lo, params, grid, chain)
    if bra.tau_site < hi:
        bra = evolve_state(bra, hi, params, grid, chain)
    start, stop = ket.tau_site, max(bra.tau_site, ket.tau_site)
    if bra.tau_site != stop:
        bra = evolve_state(bra, stop, params, grid, chain)

    points = grid.points
    base, base_scale = _propagate(ket.values, {}, start, stop, chain, points)
    norm = float(bra.values @ base)
    if norm == 0:
        raise ValueError("bra and ket have zero overlap through the window.")

    total = 0.0
    for coefficient, word in a.numeric_field_terms(params):
        values, scale = _propagate(ket.values, dict(word), start, stop, chain, points)
        if scale == -math.inf:
            continue
        total += coefficient * float(bra.values @ values) / norm * math.exp(scale - base_scale)
    return total


class LowEnergyBasis:
    """
    Eigenbasis of a site-independent step kernel, truncated to its leading levels.

    In this basis every evolution operator is diagonal, so Heisenberg operators are products of
    field-power matrices and powers of the eigenvalue ratios ``lambda_n / lambda_0``. Backward
    evolution keeps only the leading `levels` modes, which is the inverse on the dominant subspace;
    the rest of the spectrum is where dense inverses lose all precision.

    Parameters
    ----------
    params : ModelParams
        Site-independent model parameters.
    grid : FieldGrid
        Field grid.
    levels : int, default=10
        Size of the low-energy subspace.

    Attributes
    ----------
    eigenvalues : np.ndarray
        Step kernel eigenvalues, descending.
    vectors : np.ndarray
        Orthonormal eigenvectors as columns, in the same order.
    ratios : np.ndarray
        ``eigenvalues / eigenvalues[0]``.
    energies : np.ndarray
        ``-ln(eigenvalues) / epsilon`` for the leading levels.
    """

    def __init__(self, params: ModelParams, grid: FieldGrid, levels: int = 10):
        if not params.is_uniform:
            raise ValueError("LowEnergyBasis needs site-independent model parameters.")
        if not isinstance(levels, int) or not 1 <= levels <= grid.n_points:
            raise ValueError(f"levels must be an integer in [1, {grid.n_points}]. Got {levels}")

        decomposition = spectral(step_kernel(params, grid, params.first_site))
        order = np.argsort(decomposition.eigenvalues)[::-1]
        eigenvalues = decomposition.eigenvalues[order]
        vectors = decomposition.eigenvectors[:, order]
        if eigenvalues[levels - 1] <= 0:
            raise ValueError(f"The leading {levels} step kernel eigenvalues must be positive.")
        vectors = vectors * np.where(vectors.sum(axis=0) < 0, -1.0, 1.0)

        self.params: ModelParams = params
        self.grid: FieldGrid = grid
        self.levels: int = levels
        self.eigenvalues: np.ndarray = eigenvalues
        self.vectors: np.ndarray = vectors
        self.ratios: np.ndarray = eigenvalues / eigenvalues[0]
        self.energies: np.ndarray = -np.log(eigenvalues[:levels]) / params.epsilon
        self._powers: dict[int, np.ndarray] = {}
        logging.debug(f"Low-energy basis: {levels} of {grid.n_points} levels, gap {self.energies[1] - self.energies[0] if levels > 1 else float('nan'):.6g}")

    @property
    def subspace(self) -> np.ndarray:
        """Leading eigenvectors as columns."""
        return self.vectors[:, : self.levels]

    def transfer(self, steps: int) -> np.ndarray:
        """Diagonal of the evolution over `steps` sites in the eigenbasis, in ratios to the leading eigenvalue."""
        if steps >= 0:
            return np.power(self.ratios, steps)
        factors = np.zeros_like(self.ratios)
        factors[: self.levels] = np.power(self.ratios[: self.levels], steps)
        return factors

    def _field_power(self, power: int) -> np.ndarray:
        if power not in self._powers:
            self._powers[power] = self.vectors.T @ (self.grid.points[:, None] ** power * self.vectors)
        return self._powers[power]

    def word_matrix(self, word: Sequence[tuple[int, int]], reference_site: int) -> np.ndarray:
        """
        Product of field powers in operator order (left to right) with evolution between them, from and back to the reference site.

        Evolution against the direction of the word keeps the leading levels only.
        """
        result = np.eye(len(self.ratios))
        previous = reference_site
        for site, power in word:
            result = result * self.transfer(previous - site)[None, :]
            result = result @ self._field_power(power)
            previous = site
        return result * self.transfer(previous - reference_site)[None, :]

    def full_matrix(self, a: ObservableExpr, reference_site: int | None = None) -> np.ndarray:
        """Heisenberg operator of `a` in the full eigenbasis, with backward evolution restricted to the leading levels."""
        reference = _reference(self.params, reference_site)
        total = np.zeros((len(self.ratios), len(self.ratios)))
        for coefficient, word in a.numeric_field_terms(self.params):
            total += coefficient * self.word_matrix(word, reference)
        return total

    def heisenberg(self, a: ObservableExpr, reference_site: int | None = None) -> np.ndarray:
        """Heisenberg operator of `a` on the low-energy subspace."""
        m = self.levels
        return self.full_matrix(a, reference_site)[:m, :m]

    def quantum_matrix(self, a: ObservableExpr, b: ObservableExpr, reference_site: int | None = None) -> np.ndarray:
        """
        Product of the Heisenberg operators of `a` and `b` on the low-energy subspace.

        The evolution between the two factors is taken in one piece, so the product is exact when `b`
        lies below `a` and uses the dominant-subspace inverse otherwise.
        """
        reference = _reference(self.params, reference_site)
        m = self.levels
        total = np.zeros((len(self.ratios), len(self.ratios)))
        for coefficient_a, word_a in a.numeric_field_terms(self.params):
            for coefficient_b, word_b in b.numeric_field_terms(self.params):
                total += coefficient_a * coefficient_b * self.word_matrix(word_a + word_b, reference)
        return total[:m, :m]

    def project(self, op: OperatorMatrix) -> np.ndarray:
        """Grid operator expressed on the low-energy subspace."""
        return self.subspace.T @ op.entries @ self.subspace

    def dominant_inverse(self, steps: int) -> OperatorMatrix:
        """Inverse of the `steps`-site evolution restricted to the leading levels, as a grid operator."""
        if steps < 0:
            raise ValueError(f"steps must be non-negative. Got {steps}")
        factors = np.power(self.eigenvalues[: self.levels], -float(steps))
        return OperatorMatrix((self.subspace * factors) @ self.subspace.T, self.grid, f"U^-1({steps})")

    def ground_expectation(self, matrix: np.ndarray) -> float:
        """Expectation in the state made of the leading eigenvector as bra and ket."""
        return float(matrix[0, 0])

    def expectation(self, matrix: np.ndarray, bra: StateVector, ket: StateVector) -> float:
        """Expectation of a low-energy matrix between co-located states projected on the subspace."""
        _check_pair(bra, ket)
        left, right = self.subspace.T @ bra.values, self.subspace.T @ ket.values
        norm = float(left @ right)
        if norm == 0:
            raise ValueError("bra and ket have no overlap on the low-energy subspace.")
        return float(left @ matrix @ right) / norm

    def witness(self, a: ObservableExpr, reference_site: int | None = None) -> "EquivalenceWitness":
        reference = _reference(self.params, reference_site)
        return EquivalenceWitness(self.heisenberg(a, reference), reference, a.support, self.levels)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(levels={self.levels}, n_points={self.grid.n_points})"


@dataclass(frozen=True)
class EquivalenceWitness:
    """Heisenberg operator of an observable on the low-energy subspace, with the sites it was built from."""

    operator: np.ndarray
    reference_site: int
    support: tuple[int, int] | None
    levels: int

    def distance(self, other: "EquivalenceWitness") -> float:
        if other.reference_site != self.reference_site or other.levels != self.levels:
            raise ValueError("Witnesses must share the reference site and the subspace size.")
        return float(np.linalg.norm(self.operator - other.operator, 2))

    def matches(self, other: "EquivalenceWitness", tol: float = 1e-10) -> bool:
        """Whether the two observables are in the same equivalence class up to `tol`."""
        return self.distance(other) <= tol
