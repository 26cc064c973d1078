"""Shared models for the EQK toolkit."""

from src.models.errors import (
    ConfigError,
    EqkError,
    InvalidArgumentError,
    PreconditionError,
    UnsupportedInputError,
)

__all__ = [
    "EqkError",
    "InvalidArgumentError",
    "PreconditionError",
    "UnsupportedInputError",
    "ConfigError",
]
