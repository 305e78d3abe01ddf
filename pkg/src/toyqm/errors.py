"""Exception types shared across the package."""


class ToyQMError(Exception):
    """Base class for all package errors."""


class DomainError(ToyQMError, ValueError):
    """An operation was asked for something that has no mathematical meaning,
    e.g. the inverse of zero or the projective class of the zero vector."""


class UsageError(ToyQMError, ValueError):
    """Malformed input: bad dimensions, unparseable text, unknown names."""
