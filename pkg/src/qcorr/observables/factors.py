"""Primitive factors of local observables: field powers and the two discrete derivatives."""

# License: BSD 3-clause

from dataclasses import dataclass
from typing import Mapping

import numpy as np
import sympy

# Exact symbols for the lattice spacing and the kinetic coefficient in observable coefficients.
EPS = sympy.Symbol("epsilon", positive=True)
ZSYM = sympy.Symbol("Z", positive=True)


def phi_symbol(site: int) -> sympy.Symbol:
    """Symbol standing for the field value on `site`."""
    return sympy.Symbol(f"phi_{site}" if site >= 0 else f"phi_m{-site}")


def _check(site: int, power: int) -> None:
    if not isinstance(site, (int, np.integer)) or isinstance(site, bool):
        raise TypeError(f"site must be an integer. Got {site!r}")
    if not isinstance(power, (int, np.integer)) or isinstance(power, bool) or power < 1:
        raise ValueError(f"power must be a positive integer. Got {power!r}")


@dataclass(frozen=True)
class Pow:
    """Field power ``phi(site)**power``."""

    site: int
    power: int = 1

    def __post_init__(self):
        _check(self.site, self.power)

    @property
    def support(self) -> tuple[int, int]:
        return self.site, self.site

    def polynomial(self) -> sympy.Expr:
        return phi_symbol(self.site) ** self.power

    def evaluate(self, fields: Mapping[int, float | np.ndarray], epsilon: float) -> float | np.ndarray:
        return fields[self.site] ** self.power

    def __str__(self) -> str:
        return f"phi({self.site})" + (f"^{self.power}" if self.power != 1 else "")


@dataclass(frozen=True)
class DFwd:
    """Forward derivative ``((phi(site + 1) - phi(site)) / epsilon)**power``."""

    site: int
    power: int = 1

    def __post_init__(self):
        _check(self.site, self.power)

    @property
    def support(self) -> tuple[int, int]:
        return self.site, self.site + 1

    def polynomial(self) -> sympy.Expr:
        return ((phi_symbol(self.site + 1) - phi_symbol(self.site)) / EPS) ** self.power

    def evaluate(self, fields: Mapping[int, float | np.ndarray], epsilon: float) -> float | np.ndarray:
        return ((fields[self.site + 1] - fields[self.site]) / epsilon) ** self.power

    def __str__(self) -> str:
        return f"dfwd({self.site})" + (f"^{self.power}" if self.power != 1 else "")


@dataclass(frozen=True)
class DSym:
    """Symmetric derivative ``((phi(site + 1) - phi(site - 1)) / (2 epsilon))**power``."""

    site: int
    power: int = 1

    def __post_init__(self):
        _check(self.site, self.power)

    @property
    def support(self) -> tuple[int, int]:
        return self.site - 1, self.site + 1

    def polynomial(self) -> sympy.Expr:
        return ((phi_symbol(self.site + 1) - phi_symbol(self.site - 1)) / (2 * EPS)) ** self.power

    def evaluate(self, fields: Mapping[int, float | np.ndarray], epsilon: float) -> float | np.ndarray:
        return ((fields[self.site + 1] - fields[self.site - 1]) / (2.0 * epsilon)) ** self.power

    def __str__(self) -> str:
        return f"dsym({self.site})" + (f"^{self.power}" if self.power != 1 else "")


Factor = Pow | DFwd | DSym

_KIND_ORDER = {Pow: 0, DFwd: 1, DSym: 2}


def factor_sort_key(factor: Factor) -> tuple[int, int, int]:
    """Larger sites first; at equal site, powers before forward before symmetric derivatives."""
    return -factor.site, _KIND_ORDER[type(factor)], factor.power
