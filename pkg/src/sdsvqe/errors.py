"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(ToolkitError):
    """Matrix or vector has the wrong shape, size, or parity."""


class DomainError(ToolkitError):
    """Scalar argument outside the mathematical domain of the function."""


class ContractError(ToolkitError):
    """Input violates a numerical precondition (e.g. Hermiticity)."""


class UnsupportedBasisError(ToolkitError):
    """Requested operator is not representable in the chosen basis."""


class NoHorizonError(DomainError):
    """Mass exceeds the Nariai bound; the spacetime has no horizon pair."""


class ConvergenceError(ToolkitError):
    """Iterative routine failed to converge; carries the best estimate."""

    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate


class ConfigError(ToolkitError):
    """Malformed or inconsistent run configuration."""
