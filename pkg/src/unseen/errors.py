"""Exception types shared across the package."""


class UnseenError(Exception):
    """Base class for all package-specific errors."""


class DomainError(UnseenError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SizeLimitError(UnseenError, ValueError):
    """A requested table or pmf exceeds the configured size cap."""


class NumericalIntegrityError(UnseenError, ArithmeticError):
    """Two evaluation paths disagree, or an internal sampler failed to
    converge; indicates an implementation or precision problem rather
    than bad user input."""


class MethodUnavailableError(UnseenError, ValueError):
    """The requested method does not exist for the given parameters
    (e.g. Mittag-Leffler asymptotics at alpha = 0)."""


class DegenerateSampleError(UnseenError, ValueError):
    """The observed sample carries no usable information for the
    requested operation (e.g. empirical-Bayes fitting with n = 1)."""


class ParseError(UnseenError, ValueError):
    """A data file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
