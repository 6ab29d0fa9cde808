"""Class for local observables as sums of tau-ordered monomials, with the classical (pointwise) product."""

# License: BSD 3-clause

from collections import defaultdict
from typing import Iterable, Mapping, Sequence

import numpy as np
import sympy

from qcorr.exceptions import SupportError
from qcorr.lattice.configuration import LatticeConfiguration
from qcorr.lattice.field_grid import FieldGrid
from qcorr.lattice.model_params import ModelParams
from qcorr.observables.factors import EPS, ZSYM, DFwd, DSym, Factor, Pow, factor_sort_key, phi_symbol

Term = tuple[sympy.Expr, tuple[Factor, ...]]


def _canonical_factors(factors: Iterable[Factor]) -> tuple[Factor, ...]:
    merged: dict[tuple[type, int], int] = defaultdict(int)
    for factor in factors:
        merged[(type(factor), factor.site)] += factor.power
    return tuple(sorted((kind(site, power) for (kind, site), power in merged.items()), key=factor_sort_key))


class ObservableExpr:
    """
    Local observable: a linear combination of products of field powers and discrete derivatives.

    Coefficients are exact sympy expressions and may contain the symbols ``epsilon`` and ``Z``, so
    divergent constants such as ``1 / (2 epsilon Z)`` are carried exactly. Factors inside a term are
    kept in canonical order (larger sites first, like factors merged) and identical terms are
    collected. Two observables are equal when their expanded field polynomials coincide.

    Parameters
    ----------
    terms : Iterable[tuple[coefficient, Sequence[Factor]]]
        Coefficient and factors of every term. An empty factor list is a constant term.

    Examples
    --------
    >>> a = ObservableExpr.dfwd(2) * ObservableExpr.dfwd(2)
    >>> str(a)
    'dfwd(2)^2'
    >>> a == ObservableExpr.dfwd(2, power=2)
    True
    """

    def __init__(self, terms: Iterable[tuple[object, Sequence[Factor]]] = ()):
        collected: dict[tuple[Factor, ...], sympy.Expr] = {}
        for coefficient, factors in terms:
            for factor in factors:
                if not isinstance(factor, (Pow, DFwd, DSym)):
                    raise TypeError(f"Factors must be Pow, DFwd or DSym. Got {type(factor).__name__}")
            key = _canonical_factors(factors)
            collected[key] = collected.get(key, sympy.Integer(0)) + sympy.sympify(coefficient)

        simplified = ((key, sympy.simplify(c)) for key, c in sorted(collected.items(), key=lambda item: _term_sort_key(item[0])))
        self.terms: tuple[Term, ...] = tuple((c, key) for key, c in simplified if c != 0)
        self._polynomial: sympy.Expr | None = None

    @classmethod
    def constant(cls, value: object = 1) -> "ObservableExpr":
        return cls([(value, ())])

    @classmethod
    def phi(cls, site: int, power: int = 1) -> "ObservableExpr":
        return cls([(1, (Pow(site, power),))])

    @classmethod
    def dfwd(cls, site: int, power: int = 1) -> "ObservableExpr":
        return cls([(1, (DFwd(site, power),))])

    @classmethod
    def dsym(cls, site: int, power: int = 1) -> "ObservableExpr":
        return cls([(1, (DSym(site, power),))])

    @property
    def support(self) -> tuple[int, int] | None:
        """Lowest and highest site the observable depends on, derivative stencils included; None for constants."""
        ends = [f.support for _, factors in self.terms for f in factors]
        if not ends:
            return None
        return min(lo for lo, _ in ends), max(hi for _, hi in ends)

    @property
    def is_constant(self) -> bool:
        return self.support is None

    def overlaps(self, other: "ObservableExpr") -> bool:
        """Whether the supports share more than one site, i.e. neither observable lies entirely after the other."""
        if self.support is None or other.support is None:
            return False
        (lo_a, hi_a), (lo_b, hi_b) = self.support, other.support
        return not (hi_b <= lo_a or hi_a <= lo_b)

    def check_support(self, first_site: int, last_site: int) -> None:
        support = self.support
        if support is not None and (support[0] < first_site or support[1] > last_site):
            raise SupportError(f"Observable {self} has support {support[0]}..{support[1]} outside the window {first_site}..{last_site}")

    def polynomial(self) -> sympy.Expr:
        """Expanded polynomial in the field symbols ``phi_n`` with exact coefficients."""
        if self._polynomial is None:
            total = sympy.Integer(0)
            for coefficient, factors in self.terms:
                total += coefficient * sympy.Mul(*(f.polynomial() for f in factors))
            self._polynomial = sympy.expand(total)
        return self._polynomial

    def field_terms(self) -> list[tuple[sympy.Expr, tuple[tuple[int, int], ...]]]:
        """
        Terms of the expanded field polynomial as ``(coefficient, ((site, power), ...))``, sites descending.

        This is the tau-ordered monomial form that maps one-to-one onto products of Heisenberg field operators.
        """
        polynomial = self.polynomial()
        sites = sorted({int(str(s)[4:].replace("m", "-")) for s in polynomial.free_symbols if str(s).startswith("phi_")}, reverse=True)
        if not sites:
            return [(polynomial, ())] if polynomial != 0 else []

        generators = [phi_symbol(s) for s in sites]
        terms = []
        for exponents, coefficient in sympy.Poly(polynomial, *generators).terms():
            word = tuple((site, int(p)) for site, p in zip(sites, exponents) if p > 0)
            terms.append((sympy.simplify(coefficient), word))
        return sorted(terms, key=lambda t: tuple((-s, p) for s, p in t[1]))

    def numeric_field_terms(self, params: ModelParams) -> list[tuple[float, tuple[tuple[int, int], ...]]]:
        """`field_terms` with ``epsilon`` and ``Z`` replaced by the model values."""
        return [(coefficient_value(c, params), word) for c, word in self.field_terms()]

    def evaluate(self, fields: Mapping[int, float | np.ndarray], params: ModelParams) -> float | np.ndarray:
        """Value of the observable for field values given per site (scalars or equally shaped arrays)."""
        total = 0.0
        for coefficient, factors in self.terms:
            value = coefficient_value(coefficient, params)
            for factor in factors:
                value = value * factor.evaluate(fields, params.epsilon)
            total = total + value
        return total

    def __add__(self, other: object) -> "ObservableExpr":
        other = _as_observable(other)
        if other is None:
            return NotImplemented
        return ObservableExpr(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "ObservableExpr":
        return ObservableExpr((-c, f) for c, f in self.terms)

    def __sub__(self, other: object) -> "ObservableExpr":
        other = _as_observable(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "ObservableExpr":
        return (-self) + other

    def __mul__(self, other: object) -> "ObservableExpr":
        other = _as_observable(other)
        if other is None:
            return NotImplemented
        return classical_product(self, other)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        other = _as_observable(other)
        if other is None:
            return False
        return sympy.expand(self.polynomial() - other.polynomial()) == 0

    def __hash__(self) -> int:
        return hash(sympy.srepr(self.polynomial()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for coefficient, factors in self.terms:
            body = "*".join(str(f) for f in factors)
            if not factors:
                parts.append(str(coefficient))
            elif coefficient == 1:
                parts.append(body)
            elif coefficient == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"({coefficient})*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self})"


def _term_sort_key(factors: tuple[Factor, ...]) -> tuple:
    return len(factors), tuple(factor_sort_key(f) for f in factors)


def _as_observable(value: object) -> ObservableExpr | None:
    if isinstance(value, ObservableExpr):
        return value
    if isinstance(value, (int, float, np.integer, np.floating, sympy.Expr)):
        return ObservableExpr.constant(value)
    return None


def coefficient_value(coefficient: sympy.Expr, params: ModelParams) -> float:
    """Numerical value of an exact coefficient for the given model."""
    coefficient = sympy.sympify(coefficient)
    substitutions = {EPS: params.epsilon}
    if ZSYM in coefficient.free_symbols:
        z = params.uniform_z
        if z is None:
            raise ValueError(f"Coefficient {coefficient} involves Z, which is not uniform across the window.")
        substitutions[ZSYM] = z
    value = coefficient.subs(substitutions)
    if value.free_symbols:
        raise ValueError(f"Coefficient {coefficient} has unknown symbols {sorted(map(str, value.free_symbols))}")
    return float(value)


def classical_product(a: ObservableExpr, b: ObservableExpr) -> ObservableExpr:
    """
    Pointwise product of two observables; commutative.

    Examples
    --------
    >>> classical_product(ObservableExpr.phi(1), ObservableExpr.phi(3)) == classical_product(ObservableExpr.phi(3), ObservableExpr.phi(1))
    True
    """
    return ObservableExpr((ca * cb, fa + fb) for ca, fa in a.terms for cb, fb in b.terms)


def kinetic_square(site: int) -> ObservableExpr:
    """Squared derivative entering the action, the mean of the two adjacent squared forward derivatives."""
    return ObservableExpr([(sympy.Rational(1, 2), (DFwd(site, 2),)), (sympy.Rational(1, 2), (DFwd(site - 1, 2),))])


def eval_on_config(a: ObservableExpr, config: LatticeConfiguration, grid: FieldGrid, params: ModelParams) -> float:
    """
    Value of an observable on one configuration.

    Raises
    ------
    SupportError
        If the observable needs sites outside the configuration.
    """
    a.check_support(config.first_site, config.last_site)
    values = config.field_values(grid)
    fields = {site: float(values[site - config.first_site]) for site in config.sites}
    return float(a.evaluate(fields, params))
