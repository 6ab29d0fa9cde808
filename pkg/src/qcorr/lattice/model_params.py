"""Classes for defining site potentials and the parameters of an oscillator chain."""

# License: BSD 3-clause

from typing import Sequence

import numpy as np


class QuarticPotential:
    """
    Anharmonic site potential V(phi) = mu2 * phi**2 / 2 + lam * phi**4 / 8.

    Parameters
    ----------
    mu2 : float, default=1.0
        Coefficient of the quadratic term.
    lam : float, default=0.0
        Coefficient of the quartic term. Must be non-negative so that weights stay normalisable.

    Examples
    --------
    >>> QuarticPotential(mu2=1.0, lam=0.0)(2.0)
    2.0
    """

    def __init__(self, mu2: float = 1.0, lam: float = 0.0):
        if lam < 0:
            raise ValueError(f"lam must be non-negative. Got {lam}")
        self.mu2: float = float(mu2)
        self.lam: float = float(lam)

    def __call__(self, phi: float | np.ndarray) -> float | np.ndarray:
        phi2 = np.square(phi)
        return 0.5 * self.mu2 * phi2 + 0.125 * self.lam * phi2 * phi2

    @property
    def is_even(self) -> bool:
        return True

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(mu2={self.mu2}, lam={self.lam})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuarticPotential):
            return False
        return self.mu2 == other.mu2 and self.lam == other.lam

    def __hash__(self) -> int:
        return hash((self.mu2, self.lam))


class TabulatedPotential:
    """
    Site potential given as a table of values, linearly interpolated between the tabulated field values.

    Parameters
    ----------
    phi_values : Sequence[float]
        Strictly increasing field values at which the potential is tabulated.
    v_values : Sequence[float]
        Potential values, one per entry of `phi_values`. Must be finite.
    """

    def __init__(self, phi_values: Sequence[float], v_values: Sequence[float]):
        phi_values = np.asarray(phi_values, dtype=float)
        v_values = np.asarray(v_values, dtype=float)
        if phi_values.ndim != 1 or phi_values.shape != v_values.shape or phi_values.size < 2:
            raise ValueError(
                f"phi_values and v_values must be 1-D sequences of equal length >= 2. Got shapes {phi_values.shape}, {v_values.shape}"
            )
        if np.any(np.diff(phi_values) <= 0):
            raise ValueError("phi_values must be strictly increasing.")
        if not np.all(np.isfinite(v_values)):
            raise ValueError("v_values must be finite.")

        self.phi_values: np.ndarray = phi_values
        self.v_values: np.ndarray = v_values

    def __call__(self, phi: float | np.ndarray) -> float | np.ndarray:
        return np.interp(phi, self.phi_values, self.v_values)

    @property
    def is_even(self) -> bool:
        mirrored = np.interp(-self.phi_values, self.phi_values, self.v_values)
        return bool(np.allclose(-self.phi_values[::-1], self.phi_values)) and bool(np.allclose(mirrored, self.v_values))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(n_values={self.v_values.size})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TabulatedPotential):
            return False
        return np.array_equal(self.phi_values, other.phi_values) and np.array_equal(self.v_values, other.v_values)

    def __hash__(self) -> int:
        return hash((self.phi_values.tobytes(), self.v_values.tobytes()))


Potential = QuarticPotential | TabulatedPotential


class ModelParams:
    """
    Parameters of a chain of coupled anharmonic oscillators on a finite window of sites.

    The window holds `n_sites` interior sites and one boundary site on each side, labelled
    ``0 .. n_sites + 1``. Site-dependent potentials and kinetic coefficients are given as
    sequences indexed by these labels; scalars apply to every site.

    The kinetic coefficient Z plays the role of the mass M of the factorised probability
    distribution; the two names denote the same quantity.

    Parameters
    ----------
    epsilon : float
        Lattice spacing in Euclidean time. Must be greater than 0.
    potential : QuarticPotential | TabulatedPotential | Sequence, default=QuarticPotential()
        Site potential, or one potential per window site.
    z : float | Sequence[float], default=1.0
        Kinetic coefficient, or one coefficient per window site. Every value must be greater than 0.
    n_sites : int, default=1
        Number of interior sites. Must be at least 1.

    Attributes
    ----------
    epsilon : float
        Lattice spacing.
    n_sites : int
        Number of interior sites.

    Examples
    --------
    >>> params = ModelParams(epsilon=0.1, potential=QuarticPotential(mu2=1.0), z=1.0, n_sites=3)
    >>> params.window_size, params.center_site
    (5, 2)
    """

    def __init__(self, epsilon: float, potential: Potential | Sequence[Potential] | None = None, z: float | Sequence[float] = 1.0, n_sites: int = 1):
        if not (epsilon > 0):
            raise ValueError(f"epsilon must be greater than 0. Got {epsilon}")
        if not isinstance(n_sites, (int, np.integer)) or isinstance(n_sites, bool) or n_sites < 1:
            raise ValueError(f"n_sites must be a positive integer. Got {n_sites}")

        self.epsilon: float = float(epsilon)
        self.n_sites: int = int(n_sites)

        potential = QuarticPotential() if potential is None else potential
        if isinstance(potential, (QuarticPotential, TabulatedPotential)):
            self._potentials: tuple[Potential, ...] = (potential,) * self.window_size
        else:
            potentials = tuple(potential)
            if len(potentials) != self.window_size:
                raise ValueError(f"Expected {self.window_size} site potentials. Got {len(potentials)}")
            for p in potentials:
                if not isinstance(p, (QuarticPotential, TabulatedPotential)):
                    raise TypeError(f"Site potentials must be QuarticPotential or TabulatedPotential. Got {type(p).__name__}")
            self._potentials = potentials

        if np.isscalar(z):
            z_values = np.full(self.window_size, float(z))
        else:
            z_values = np.asarray(z, dtype=float)
            if z_values.shape != (self.window_size,):
                raise ValueError(f"Expected {self.window_size} kinetic coefficients. Got shape {z_values.shape}")
        if np.any(~(z_values > 0)):
            raise ValueError(f"Every kinetic coefficient Z must be greater than 0. Got {z_values.tolist()}")
        z_values.setflags(write=False)
        self._z: np.ndarray = z_values

    @property
    def window_size(self) -> int:
        """Number of sites in the window, boundary sites included."""
        return self.n_sites + 2

    @property
    def first_site(self) -> int:
        return 0

    @property
    def last_site(self) -> int:
        return self.n_sites + 1

    @property
    def center_site(self) -> int:
        """Default reference site for Heisenberg operators."""
        return (self.n_sites + 1) // 2

    @property
    def is_uniform(self) -> bool:
        """Whether the potential and kinetic coefficient are the same on every site."""
        return all(p == self._potentials[0] for p in self._potentials) and bool(np.all(self._z == self._z[0]))

    @property
    def uniform_z(self) -> float | None:
        """The site-independent kinetic coefficient, or None when Z varies across the window."""
        return float(self._z[0]) if np.all(self._z == self._z[0]) else None

    @property
    def is_even(self) -> bool:
        return all(p.is_even for p in self._potentials)

    def check_site(self, site: int) -> int:
        if not (self.first_site <= site <= self.last_site):
            raise ValueError(f"site must lie in the window {self.first_site}..{self.last_site}. Got {site}")
        return int(site)

    def potential_at(self, site: int) -> Potential:
        return self._potentials[self.check_site(site)]

    def z_at(self, site: int) -> float:
        return float(self._z[self.check_site(site)])

    def link_z(self, site: int) -> float:
        """Kinetic coefficient of the link between `site` and `site + 1`: the mean of the two site values."""
        if not (self.first_site <= site < self.last_site):
            raise ValueError(f"link must start in the window {self.first_site}..{self.last_site - 1}. Got {site}")
        return 0.5 * (float(self._z[site]) + float(self._z[site + 1]))

    def site_tau(self, site: int, reference_site: int | None = None) -> float:
        """Euclidean time of a site relative to the reference site."""
        reference_site = self.center_site if reference_site is None else reference_site
        return self.epsilon * (site - reference_site)

    def tau_site(self, tau: float, reference_site: int | None = None) -> int:
        """Site whose Euclidean time is `tau`; `tau` must be a multiple of epsilon."""
        reference_site = self.center_site if reference_site is None else reference_site
        steps = tau / self.epsilon
        nearest = round(steps)
        if abs(steps - nearest) > 1e-9 * max(1.0, abs(steps)):
            raise ValueError(f"tau must be a multiple of epsilon={self.epsilon}. Got {tau}")
        return self.check_site(reference_site + int(nearest))

    def replace(self, **changes) -> "ModelParams":
        """Return a copy with some constructor arguments replaced."""
        kwargs = {"epsilon": self.epsilon, "potential": self._potentials, "z": self._z.copy(), "n_sites": self.n_sites}
        if self.is_uniform:
            kwargs["potential"] = self._potentials[0]
            kwargs["z"] = float(self._z[0])
        kwargs.update(changes)
        return ModelParams(**kwargs)

    def __repr__(self) -> str:
        if self.is_uniform:
            return f"{self.__class__.__name__}(epsilon={self.epsilon}, potential={self._potentials[0]!r}, z={self._z[0]}, n_sites={self.n_sites})"
        return f"{self.__class__.__name__}(epsilon={self.epsilon}, n_sites={self.n_sites}, site-dependent)"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModelParams):
            return False
        return (
            self.epsilon == other.epsilon
            and self.n_sites == other.n_sites
            and self._potentials == other._potentials
            and np.array_equal(self._z, other._z)
        )

    def __hash__(self) -> int:
        return hash((self.epsilon, self.n_sites, self._potentials, self._z.tobytes()))
