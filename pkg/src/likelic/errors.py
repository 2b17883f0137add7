"""Exception hierarchy shared by all likelic modules."""

from __future__ import annotations


class LikelicError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(LikelicError):
    """Invalid graph construction or query (unknown vertex, self-loop, ...)."""


class ScenarioError(LikelicError):
    """Malformed scenario: duplicate evidence, bad exclusion floor, ..."""


class ParseError(LikelicError):
    """Syntax or range error in a context/scenario/script file.

    Carries the 1-based source position so diagnostics can point at the
    offending token.
    """

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, col {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
