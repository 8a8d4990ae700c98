"""Static (parse-time) error types.

All of these are raised before any execution happens; the CLI maps them to
exit code 2.  Runtime failures are not exceptions at the API boundary --
they are `Failed` execution states (see engine.FailureReason).
"""

from __future__ import annotations


class ParseError(Exception):
    """Malformed or statically invalid source text."""

    def __init__(self, message: str, line: int, col: int,
                 expected: frozenset[str] = frozenset()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected
        super().__init__(str(self))

    def __str__(self) -> str:
        # `expected` stays structured data; the message already reads well.
        return f"line {self.line}, col {self.col}: {self.message}"


class DuplicateClassError(ParseError):
    pass


class MissingMainError(ParseError):
    pass


class DuplicateParamError(ParseError):
    pass


class UnknownClassError(ParseError):
    """`new C` where no class C is declared; rejected before execution."""


class UnqualifiedNameError(ParseError):
    """A bare name used in main, where there is no enclosing object."""
