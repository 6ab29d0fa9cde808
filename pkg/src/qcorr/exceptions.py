"""Exception types raised by qcorr when a computation is refused or cannot be trusted."""

# License: BSD 3-clause


class BoundaryAccessError(IndexError):
    """Raised when a site-local quantity needs a neighbour that lies outside the configuration window."""


class SupportError(ValueError):
    """Raised when an observable touches sites outside the configuration or model window."""


class GridMismatchError(ValueError):
    """Raised when operators or states defined on different field grids are combined."""


class AsymmetricOperatorError(ValueError):
    """Raised when a symmetric eigensolver is asked to decompose a non-symmetric matrix."""


class IllConditionedError(RuntimeError):
    """
    Raised when an inverse evolution or a similarity transport cannot be trusted.

    Parameters
    ----------
    message : str
        Human-readable diagnostic.
    residual : float
        Max-norm of ``U @ U_inv - 1`` that triggered the refusal.
    condition : float | None, optional
        2-norm condition number of the inverted matrix, when it was computed.
    """

    def __init__(self, message: str, residual: float, condition: float | None = None):
        super().__init__(message)
        self.residual: float = residual
        self.condition: float | None = condition


class GridCouplingError(ValueError):
    """
    Raised when the field-grid spacing does not resolve the kinetic Gaussian of the step kernel.

    Parameters
    ----------
    message : str
        Human-readable diagnostic.
    ratio : float
        The coupling ratio ``9 * spacing**2 * Z / epsilon``; values above 1 under-resolve the kernel.
    """

    def __init__(self, message: str, ratio: float):
        super().__init__(message)
        self.ratio: float = ratio


class UnsupportedBasisError(ValueError):
    """Raised when an operator product or standard representative leaves the supported monomial basis."""


class BudgetExceededError(RuntimeError):
    """
    Raised when a brute-force enumeration would exceed its configuration budget.

    Parameters
    ----------
    message : str
        Human-readable diagnostic.
    count : int
        Number of configurations the enumeration would have visited.
    """

    def __init__(self, message: str, count: int):
        super().__init__(message)
        self.count: int = count


class ConvergenceError(RuntimeError):
    """Raised when an iterative eigensolver does not reach its residual tolerance."""


class InvalidFixtureError(ValueError):
    """
    Raised when two exterior weight tables that should induce the same boundary states do not.

    Parameters
    ----------
    message : str
        Human-readable diagnostic.
    report : object, optional
        The discrepancy report computed before the fixture was rejected.
    """

    def __init__(self, message: str, report: object = None):
        super().__init__(message)
        self.report: object = report


class ConfigError(ValueError):
    """
    Raised for malformed experiment configuration files.

    Parameters
    ----------
    message : str
        Human-readable diagnostic.
    line : int | None, optional
        1-based line number of the offending entry.
    field : str | None, optional
        Dotted ``section.key`` name of the offending entry.
    """

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(field)
        super().__init__(f"{', '.join(location)}: {message}" if location else message)
        self.line: int | None = line
        self.field: str | None = field
