"""Exception types raised across the package."""


class NongaussError(Exception):
    """Base class for all package errors."""


class DomainError(NongaussError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class AccuracyError(NongaussError, ArithmeticError):
    """A series failed to reach the requested accuracy.

    Attributes:
        partial: the last partial sum computed before giving up.
        terms: number of terms summed.
    """

    def __init__(self, message, partial, terms):
        super().__init__(message)
        self.partial = partial
        self.terms = terms


class ConfigError(NongaussError, ValueError):
    """An invalid sweep or command-line configuration.

    Attributes:
        field: name of the offending configuration field.
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
