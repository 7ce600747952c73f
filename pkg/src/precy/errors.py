class PrecyError(Exception):
    """Base class for all errors raised by this package."""


class InputShapeError(PrecyError, ValueError):
    """A vector, index or table does not match the declared dimension."""


class DegreeError(PrecyError, ValueError):
    """A ternary component violates the degree +1 constraint."""


class DomainError(PrecyError, ValueError):
    """An operation received an object outside its domain."""

    def __init__(self, message, pattern=None):
        super().__init__(message)
        self.pattern = pattern


class SchemaError(PrecyError, ValueError):
    """An input document does not match its schema."""

    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class ConstructionError(PrecyError, ValueError):
    """A requested object cannot be built from the given data."""
