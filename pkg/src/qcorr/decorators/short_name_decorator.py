"""
Decorators to give experiment runners a short name and to look them up by it.

The short name is what the command line uses as a subcommand (``spectrum``, ``oracle-check``)
and what the CSV file names of a runner start with.
"""

# License: BSD 3-clause

import re
from typing import Any, Callable

_REGISTRY: dict[str, type] = {}
_NAME = re.compile(r"[a-z][a-z0-9-]*")


def short_name(expr: str) -> Callable:
    """
    Decorator to assign a short name to a function or class.

    Classes are also registered under the name, so `registered_runners` can find them.

    Parameters
    ----------
    expr : str
        Lower-case name made of letters, digits and dashes.

    Returns
    -------
    Callable
        A decorator that assigns the short name and returns the object unchanged.

    Raises
    ------
    ValueError
        If the name is malformed or already taken by another class.
    """
    if not isinstance(expr, str) or not _NAME.fullmatch(expr):
        raise ValueError(f"short name must match {_NAME.pattern}. Got {expr!r}")

    def short_name_func_applicator(obj: Callable) -> Callable:
        obj.__short_name__ = expr
        if isinstance(obj, type):
            existing = _REGISTRY.get(expr)
            if existing is not None and existing.__qualname__ != obj.__qualname__:
                raise ValueError(f"short name '{expr}' is already used by {existing.__qualname__}")
            _REGISTRY[expr] = obj
        return obj

    return short_name_func_applicator


def get_short_name(v: Any) -> str:
    """
    Short name of an object: the assigned one, else its ``__name__``, else ``str(v)``.

    Parameters
    ----------
    v : Any
        Function, class or value.

    Returns
    -------
    str
        The name.
    """
    if hasattr(v, "__short_name__"):
        return v.__short_name__
    elif hasattr(v, "__name__"):
        return v.__name__
    return str(v)


def registered_runners() -> dict[str, type]:
    """Classes registered with `short_name`, keyed by name in alphabetical order."""
    return dict(sorted(_REGISTRY.items()))
