"""Exceptions shared across the package."""

from __future__ import annotations


class RinglatError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(RinglatError):
    """Invalid input: bad order, non-monic polynomial, non-local ring, ..."""


class SizeLimitError(RinglatError):
    """A requested construction or enumeration exceeds the configured bound."""


class ParseError(PreconditionError):
    """Ring expression syntax error; carries line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NotApplicableError(PreconditionError):
    """The operation's hypotheses do not hold for the given input."""


class InternalCheckError(RinglatError):
    """A cross-checked identity failed; signals an implementation bug."""
