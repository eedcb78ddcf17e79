"""
Error hierarchy.
Every error knows the CLI exit code and the HTTP status it maps to.
"""


class QuantumDoubleError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 1
    http_status: int = 500


class ArgumentError(QuantumDoubleError, ValueError):
    """Invalid argument: index out of range, not a subgroup, bad lattice size."""

    exit_code = 2
    http_status = 400


class ConfigError(QuantumDoubleError):
    """Malformed group file, unknown builtin, incomplete couplings."""

    exit_code = 2
    http_status = 422


class CapacityError(QuantumDoubleError):
    """A group closure or Hilbert space exceeds the configured limits."""

    exit_code = 3
    http_status = 413


class NumericDegeneracyError(QuantumDoubleError):
    """Class-sum eigenvalues could not be separated within tolerance."""

    def __init__(self, message: str, suggested_tolerance: float):
        super().__init__(f"{message} (try a tolerance of {suggested_tolerance:.1e})")
        self.suggested_tolerance = suggested_tolerance


class NotACharacterError(QuantumDoubleError):
    """A class function decomposes with non-integral multiplicities."""

    http_status = 422


class InvariantViolationError(QuantumDoubleError):
    """An internal consistency identity failed."""


class NumericError(QuantumDoubleError):
    """An iterative eigensolver did not converge."""

    def __init__(self, message: str, iterations: int):
        super().__init__(f"{message} after {iterations} iterations")
        self.iterations = iterations
