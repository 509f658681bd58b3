"""Exception taxonomy shared across the package.

Each class maps to a distinct CLI exit code (see cli.py).
"""


class CSTorusError(Exception):
    """Base class for all package errors."""


class SchemaError(CSTorusError):
    """Invalid configuration or input that violates a declared constraint."""


class DomainError(CSTorusError):
    """Mathematically invalid input (e.g. vector not in the required lattice)."""


class ResourceLimitError(CSTorusError):
    """A configurable enumeration ceiling was exceeded."""


class ToleranceError(CSTorusError):
    """A requested verification failed its tolerance."""


class InconsistencyError(CSTorusError):
    """An internal cross-check of derived constants failed."""
