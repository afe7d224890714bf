"""Source positions and the error classes raised by the interpreter.

Three error classes can surface from a program: ``ParseError`` from the
lexer/parser, ``IllformedError`` for linear-scope violations, and
``RuntimeTypeError`` for dynamic shape violations.  ``StepLimitExceeded``
is not a language error; it is raised only when a caller opts into a
statement budget.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Pos:
    """1-based line/column position in source text."""

    line: int
    col: int

    def __str__(self) -> str:
        return f"line {self.line}, col {self.col}"


class LangError(Exception):
    """Base class for all errors surfaced to embedders and the CLI."""

    label = "error"

    def __init__(self, message: str, pos: Pos | None = None):
        super().__init__(message)
        self.message = message
        self.pos = pos

    def render(self) -> str:
        """Canonical one-line rendering, e.g. ``illformed: ... (line 2, col 1)``."""
        if self.pos is None:
            return f"{self.label}: {self.message}"
        return f"{self.label}: {self.message} ({self.pos})"


class ParseError(LangError):
    """Lexical or grammatical error.

    ``at_eof`` is set when the input ended where more tokens were required;
    the REPL uses it to decide whether to keep reading continuation lines.
    """

    label = "parse error"

    def __init__(self, message: str, pos: Pos | None = None, *, at_eof: bool = False):
        super().__init__(message, pos)
        self.at_eof = at_eof


class IllformedError(LangError):
    """Linear-scope violation: an assignment target outside linear scope,
    or an unbound identifier."""

    label = "illformed"


class RuntimeTypeError(LangError):
    """Dynamic shape violation: non-boolean condition, non-list for-source,
    application of a non-function, or ill-shaped operator operands."""

    label = "typeerror"


class StepLimitExceeded(LangError):
    """Raised when an optional statement budget runs out (CLI ``--steps``)."""

    label = "step limit"
