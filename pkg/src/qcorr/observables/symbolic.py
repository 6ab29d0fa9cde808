"""Formal operator words in Q and R, their normal ordering and the quantum product of observables."""

# License: BSD 3-clause

from itertools import groupby
from typing import Iterable, Mapping

import sympy

from qcorr.exceptions import UnsupportedBasisError
from qcorr.observables.expr import ObservableExpr
from qcorr.observables.factors import EPS, ZSYM, Pow

Letter = tuple[str, int]
QWord = tuple[int, ...]

# Equal-site blocks the standard representative is defined on; Q^p blocks are accepted for any p.
_SUPPORTED_BLOCKS = {"R", "RR", "RQ", "QR"}


class FormalOperator:
    """
    Linear combination of words in the formal Heisenberg operators Q(site) and R(site).

    Words are read in operator order: the leftmost letter acts last. Coefficients are exact sympy
    expressions. Only the algebraic relations of the model enter: ``R(s) = -(Z / epsilon) (Q(s+1) - Q(s))``
    and ``[Q(s+1), Q(s)] = -epsilon / Z``.

    Parameters
    ----------
    terms : Mapping[tuple[Letter, ...], coefficient]
        Words mapped to their coefficients, a letter being ``("Q", site)`` or ``("R", site)``.

    Examples
    --------
    >>> r2 = FormalOperator.R(0, power=2)
    >>> standard_representative(r2) == ZSYM**2 * ObservableExpr.dfwd(0, power=2) - ZSYM / EPS
    True
    """

    def __init__(self, terms: Mapping[tuple[Letter, ...], object] | None = None):
        collected: dict[tuple[Letter, ...], sympy.Expr] = {}
        for word, coefficient in (terms or {}).items():
            for kind, site in word:
                if kind not in ("Q", "R"):
                    raise ValueError(f"Letters must be 'Q' or 'R'. Got {kind}")
            collected[tuple(word)] = collected.get(tuple(word), sympy.Integer(0)) + sympy.sympify(coefficient)
        simplified = ((w, sympy.simplify(c)) for w, c in collected.items())
        self.terms: dict[tuple[Letter, ...], sympy.Expr] = {w: c for w, c in simplified if c != 0}

    @classmethod
    def Q(cls, site: int, power: int = 1) -> "FormalOperator":
        return cls({(("Q", site),) * power: 1})

    @classmethod
    def R(cls, site: int, power: int = 1) -> "FormalOperator":
        return cls({(("R", site),) * power: 1})

    @classmethod
    def identity(cls) -> "FormalOperator":
        return cls({(): 1})

    @classmethod
    def from_observable(cls, a: ObservableExpr) -> "FormalOperator":
        """Tau-ordered Q words of the Heisenberg image of a local observable."""
        terms: dict[tuple[Letter, ...], sympy.Expr] = {}
        for coefficient, word in a.field_terms():
            letters = tuple(("Q", site) for site, power in word for _ in range(power))
            terms[letters] = terms.get(letters, sympy.Integer(0)) + coefficient
        return cls(terms)

    def __add__(self, other: "FormalOperator") -> "FormalOperator":
        if not isinstance(other, FormalOperator):
            return NotImplemented
        merged = dict(self.terms)
        for word, coefficient in other.terms.items():
            merged[word] = merged.get(word, sympy.Integer(0)) + coefficient
        return FormalOperator(merged)

    def __neg__(self) -> "FormalOperator":
        return FormalOperator({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FormalOperator") -> "FormalOperator":
        if not isinstance(other, FormalOperator):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: object) -> "FormalOperator":
        if isinstance(scalar, FormalOperator):
            return NotImplemented
        return FormalOperator({w: sympy.sympify(scalar) * c for w, c in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "FormalOperator") -> "FormalOperator":
        if not isinstance(other, FormalOperator):
            return NotImplemented
        product: dict[tuple[Letter, ...], sympy.Expr] = {}
        for word_a, coefficient_a in self.terms.items():
            for word_b, coefficient_b in other.terms.items():
                word = word_a + word_b
                product[word] = product.get(word, sympy.Integer(0)) + coefficient_a * coefficient_b
        return FormalOperator(product)

    def q_words(self) -> dict[QWord, sympy.Expr]:
        """Expansion into pure Q words, each R replaced by its difference of Q at neighbouring sites."""
        expanded: dict[QWord, sympy.Expr] = {}
        for word, coefficient in self.terms.items():
            partial: dict[QWord, sympy.Expr] = {(): coefficient}
            for kind, site in word:
                options = [((site,), sympy.Integer(1))] if kind == "Q" else [((site + 1,), -ZSYM / EPS), ((site,), ZSYM / EPS)]
                partial = _combine(((w + letter, c * factor) for w, c in partial.items() for letter, factor in options))
            for q_word, c in partial.items():
                expanded[q_word] = expanded.get(q_word, sympy.Integer(0)) + c
        return {w: c for w, c in expanded.items() if sympy.simplify(c) != 0}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalOperator):
            return False
        difference = (self - other).terms
        return not difference

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*" + ("".join(f"{k}({s})" for k, s in w) or "1") for w, c in self.terms.items())

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self})"


def _combine(items: Iterable[tuple[QWord, sympy.Expr]]) -> dict[QWord, sympy.Expr]:
    combined: dict[QWord, sympy.Expr] = {}
    for word, coefficient in items:
        combined[word] = combined.get(word, sympy.Integer(0)) + coefficient
    return combined


def normal_order(words: Mapping[QWord, object]) -> dict[QWord, sympy.Expr]:
    """
    Rewrite Q words into tau-ordered form, larger sites to the left.

    Neighbouring letters are exchanged with ``Q(s) Q(s+1) = Q(s+1) Q(s) + epsilon / Z``.

    Raises
    ------
    UnsupportedBasisError
        If two letters more than one site apart stand in the wrong order; their commutator is not a c-number.
    """
    ordered: dict[QWord, sympy.Expr] = {}
    pending = list(_combine((tuple(w), sympy.sympify(c)) for w, c in words.items()).items())
    while pending:
        word, coefficient = pending.pop()
        position = next((i for i in range(len(word) - 1) if word[i] < word[i + 1]), None)
        if position is None:
            ordered[word] = ordered.get(word, sympy.Integer(0)) + coefficient
            continue
        lower, upper = word[position], word[position + 1]
        if upper - lower != 1:
            raise UnsupportedBasisError(f"Q({lower}) Q({upper}) cannot be tau-ordered: sites {upper - lower} apart have no c-number commutator.")
        swapped = word[:position] + (upper, lower) + word[position + 2 :]
        pending.append((swapped, coefficient))
        pending.append((word[:position] + word[position + 2 :], coefficient * EPS / ZSYM))

    return {w: sympy.simplify(c) for w, c in ordered.items() if sympy.simplify(c) != 0}


def _ordered_to_observable(words: Mapping[QWord, sympy.Expr]) -> ObservableExpr:
    terms = []
    for word, coefficient in words.items():
        factors = tuple(Pow(site, len(list(group))) for site, group in groupby(word))
        terms.append((coefficient, factors))
    return ObservableExpr(terms)


def _check_basis(word: tuple[Letter, ...]) -> None:
    blocks = [(site, "".join(kind for kind, _ in group)) for site, group in groupby(word, key=lambda letter: letter[1])]
    sites = [site for site, _ in blocks]
    if any(upper <= lower for upper, lower in zip(sites, sites[1:])):
        raise UnsupportedBasisError(f"Word {word} is not tau-ordered.")
    for site, block in blocks:
        if set(block) != {"Q"} and block not in _SUPPORTED_BLOCKS:
            raise UnsupportedBasisError(f"Block {block} at site {site} is outside the supported basis (Q^p, R, R^2, RQ, QR).")


def standard_representative(op: FormalOperator) -> ObservableExpr:
    """
    Standard representative F of a formal operator.

    Defined on tau-ordered words whose equal-site blocks are ``Q^p``, ``R``, ``R^2``, ``RQ`` or ``QR``,
    and extended linearly. Field operators map to field values, ``R(s)`` to ``-Z dfwd(s)`` and
    ``R(s)^2`` to ``Z^2 dfwd(s)^2 - Z / epsilon``.

    Raises
    ------
    UnsupportedBasisError
        If a word lies outside the supported basis.

    Examples
    --------
    >>> standard_representative(FormalOperator.Q(2) @ FormalOperator.Q(1)) == ObservableExpr.phi(2) * ObservableExpr.phi(1)
    True
    """
    for word in op.terms:
        _check_basis(word)
    return _ordered_to_observable(normal_order(op.q_words()))


def quantum_product(a: ObservableExpr, b: ObservableExpr) -> ObservableExpr:
    """
    Quantum product ``a o b``: the observable whose Heisenberg operator is the product of those of `a` and `b`.

    Associative and in general not commutative. For tau-ordered pairs that do not overlap it equals
    the classical product.

    Raises
    ------
    UnsupportedBasisError
        If the product needs a commutator of field operators more than one site apart.

    Examples
    --------
    >>> dfwd = ObservableExpr.dfwd(0)
    >>> quantum_product(dfwd, dfwd) == dfwd * dfwd - 1 / (EPS * ZSYM)
    True
    """
    product = FormalOperator.from_observable(a) @ FormalOperator.from_observable(b)
    return _ordered_to_observable(normal_order(product.q_words()))


def commutator_observable(a: ObservableExpr, b: ObservableExpr) -> ObservableExpr:
    """Observable of the commutator, ``a o b - b o a``."""
    return quantum_product(a, b) - quantum_product(b, a)
