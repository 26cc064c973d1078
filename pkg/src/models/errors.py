"""Exception hierarchy for the EQK toolkit.

Every error raised on purpose by the toolkit derives from EqkError. The
argument-style errors also derive from ValueError so callers can keep
catching the builtin.
"""

from typing import List, Optional


class EqkError(Exception):
    """Base class for toolkit errors."""

    pass


class InvalidArgumentError(EqkError, ValueError):
    """Raised when an argument is malformed, out of range or mismatched."""

    pass


class PreconditionError(EqkError, ValueError):
    """Raised when a documented precondition of an operation does not hold."""

    pass


class UnsupportedInputError(EqkError, ValueError):
    """Raised when the input is well formed but cannot be handled."""

    pass


class ConfigError(EqkError):
    """Raised when an experiment configuration is invalid.

    Args:
        message: Human-readable description
        fields: Dotted names of the offending configuration fields
    """

    def __init__(self, message: str, fields: Optional[List[str]] = None):
        self.fields = list(fields or [])
        if self.fields:
            message = f"{message} (fields: {', '.join(self.fields)})"
        super().__init__(message)
