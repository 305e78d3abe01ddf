"""Spekkens' toy model and quantum mechanics over F5, with exact arithmetic."""

from .errors import DomainError, ToyQMError, UsageError
from .field import FieldElement

__version__ = "0.1.0"

__all__ = ["DomainError", "FieldElement", "ToyQMError", "UsageError", "__version__"]
