"""Parser for the prefix observable syntax used in configuration files and on the command line.

Grammar::

    expr  := atom | "mul(" expr "," expr ")" | "qmul(" expr "," expr ")"
    atom  := "phi(" int ")" | "phi2(" int ")" | "dfwd(" int ")" | "dsym(" int ")" | "dkin2(" int ")"

``phi2(n)`` is the squared field, ``dkin2(n)`` the squared derivative of the action
(mean of the two adjacent squared forward derivatives), ``mul`` the classical product and
``qmul`` the quantum product. Site labels may be negative; whitespace is ignored.
"""

# License: BSD 3-clause

import re
from typing import Callable

from qcorr.observables.expr import ObservableExpr, classical_product, kinetic_square
from qcorr.observables.symbolic import quantum_product

_ATOMS: dict[str, Callable[[int], ObservableExpr]] = {
    "phi": ObservableExpr.phi,
    "phi2": lambda site: ObservableExpr.phi(site, 2),
    "dfwd": ObservableExpr.dfwd,
    "dsym": ObservableExpr.dsym,
    "dkin2": kinetic_square,
}
_BINARY: dict[str, Callable[[ObservableExpr, ObservableExpr], ObservableExpr]] = {"mul": classical_product, "qmul": quantum_product}

_TOKEN = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9]*)|(-?\d+)|(.))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    for name, number, symbol in _TOKEN.findall(text):
        token = name or number or symbol
        if token.strip():
            tokens.append(token)
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.position = 0

    def _peek(self) -> str | None:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def _expect(self, token: str) -> None:
        found = self._peek()
        if found != token:
            raise ValueError(f"Expected '{token}' in observable '{self.text}'. Got {found!r}")
        self.position += 1

    def parse(self) -> ObservableExpr:
        expr = self._expr()
        if self._peek() is not None:
            raise ValueError(f"Unexpected trailing input {self._peek()!r} in observable '{self.text}'")
        return expr

    def _expr(self) -> ObservableExpr:
        name = self._peek()
        if name is None:
            raise ValueError(f"Observable '{self.text}' ended unexpectedly.")
        self.position += 1
        self._expect("(")
        if name in _BINARY:
            left = self._expr()
            self._expect(",")
            right = self._expr()
            self._expect(")")
            return _BINARY[name](left, right)
        if name in _ATOMS:
            site = self._peek()
            if site is None or not re.fullmatch(r"-?\d+", site):
                raise ValueError(f"{name}() needs an integer site in observable '{self.text}'. Got {site!r}")
            self.position += 1
            self._expect(")")
            return _ATOMS[name](int(site))
        raise ValueError(f"Unknown observable '{name}'. Expected one of {sorted(_ATOMS) + sorted(_BINARY)}")


def parse_observable(text: str) -> ObservableExpr:
    """
    Parse an observable written in the prefix syntax.

    Raises
    ------
    ValueError
        If the text does not follow the grammar.
    UnsupportedBasisError
        If a ``qmul`` needs a commutator outside the supported basis.

    Examples
    --------
    >>> parse_observable("mul(phi(2), dfwd(0))") == ObservableExpr.phi(2) * ObservableExpr.dfwd(0)
    True
    """
    if not isinstance(text, str) or not text.strip():
        raise ValueError(f"Observable text must be a non-empty string. Got {text!r}")
    return _Parser(text).parse()
