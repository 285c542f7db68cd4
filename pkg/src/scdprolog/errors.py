"""Exception types shared across the engine.

Every error raised by the package derives from ScdPrologError so the CLI
can map any engine failure to exit status 2 with one except clause.
"""

from __future__ import annotations

from typing import NamedTuple


class Position(NamedTuple):
    line: int
    column: int

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class ScdPrologError(Exception):
    """Base class for all errors raised by this package."""


class LexError(ScdPrologError):
    def __init__(self, position: Position, message: str):
        super().__init__(f"{position}: {message}")
        self.position = position
        self.message = message


class ParseError(ScdPrologError):
    def __init__(self, position: Position, expected: str, found: str):
        super().__init__(f"{position}: expected {expected}, found {found!r}")
        self.position = position
        self.expected = expected
        self.found = found


class BadClauseHead(ScdPrologError):
    def __init__(self, position: Position, message: str = "clause head must be an atom or compound term"):
        super().__init__(f"{position}: {message}")
        self.position = position


class CyclicTerm(ScdPrologError):
    """A cyclic binding was encountered (possible only with the occurs check off)."""


class DepthLimitExceeded(ScdPrologError):
    def __init__(self, step_count: int):
        super().__init__(f"depth limit exceeded after {step_count} backchaining steps")
        self.step_count = step_count


class UnknownPredicate(ScdPrologError):
    def __init__(self, name: str, arity: int):
        super().__init__(f"unknown predicate {name}/{arity}")
        self.name = name
        self.arity = arity


class BuiltinTypeError(ScdPrologError):
    """Wrong argument type for a builtin (named to avoid shadowing Python's TypeError)."""

    def __init__(self, builtin: str, offending, message: str = "expected an integer"):
        super().__init__(f"{builtin}: {message}: {offending}")
        self.builtin = builtin
        self.offending = offending


class InstantiationError(ScdPrologError):
    def __init__(self, builtin: str):
        super().__init__(f"{builtin}: arguments are not sufficiently instantiated")
        self.builtin = builtin
