"""Exception hierarchy shared by all optodark modules."""

from __future__ import annotations


class OptodarkError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(OptodarkError, ValueError):
    """A parameter set violates its invariants.

    ``field`` names the offending parameter; ``position`` is an optional
    ``(path, line)`` pair when the value came from a config file.
    """

    def __init__(self, field: str, message: str, position: tuple[str, int] | None = None):
        self.field = field
        self.position = position
        where = f" ({position[0]}:{position[1]})" if position else ""
        super().__init__(f"{field}: {message}{where}")


class ConfigError(OptodarkError, ValueError):
    """Malformed config document, sweep spec or CLI invocation."""


class ContractError(OptodarkError, ValueError):
    """A caller broke an API precondition (shape mismatch, unknown mode...)."""


class StabilityError(OptodarkError):
    """The drift matrix is not strictly stable, so no steady state exists."""

    def __init__(self, message: str, max_real: float, spectrum=None):
        self.max_real = max_real
        self.spectrum = spectrum
        super().__init__(message)


class NumericalError(OptodarkError, ArithmeticError):
    """A linear-algebra routine failed or missed its accuracy target."""

    def __init__(self, message: str, matrix=None):
        self.matrix = matrix
        if matrix is not None:
            import numpy as np

            with np.printoptions(precision=17, linewidth=200):
                message = f"{message}\nmatrix:\n{np.asarray(matrix)!r}"
        super().__init__(message)


class UnphysicalCovarianceError(OptodarkError, ValueError):
    """A covariance matrix fails the uncertainty principle."""


class DegenerateConfigurationError(OptodarkError, ValueError):
    """Both cavity couplings vanish, so the hybrid modes are undefined."""


class UnsupportedConfigurationError(OptodarkError, ValueError):
    """Coupling configuration outside the supported taxonomy."""
