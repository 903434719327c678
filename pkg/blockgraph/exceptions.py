"""
Error hierarchy for the block graph toolkit.

Input problems derive from ValueError so callers that only care about
"bad input" can keep catching ValueError. InvariantViolation marks a broken
internal contract; the command line maps it to exit code 3.
"""


class BlockGraphError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(BlockGraphError, ValueError):
    """An operation was called with arguments outside its precondition."""


class InstanceFormatError(BlockGraphError, ValueError):
    """A malformed instance file, with the offending 1-based line number."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class OracleSizeError(BlockGraphError, ValueError):
    """An oracle was handed a graph above its size guard."""


class InvariantViolation(BlockGraphError):
    """An internal contract failed; the result cannot be trusted."""
