"""The fixed operator table.

Shared by the parser (to drive precedence climbing) and the term printer
(to decide infix rendering and parenthesization). Not user-extensible.
"""

from __future__ import annotations

from dataclasses import dataclass

INFIX_LEFT = "yfx"
INFIX_RIGHT = "xfy"
INFIX_NON = "xfx"


@dataclass(frozen=True)
class Op:
    prec: int
    fixity: str
    # True: render with surrounding spaces ("a :- b"); False: tight ("9:40").
    padded: bool = True

    @property
    def left_max(self) -> int:
        # Max priority an argument may have to sit on this operator's left.
        return self.prec if self.fixity == INFIX_LEFT else self.prec - 1

    @property
    def right_max(self) -> int:
        return self.prec if self.fixity == INFIX_RIGHT else self.prec - 1


# Higher precedence binds looser. `;` and `*->` have no solver semantics;
# they exist so the standard-Prolog translation output re-parses.
OPERATORS: dict[str, Op] = {
    ":-": Op(1200, INFIX_NON),
    ";;": Op(1100, INFIX_RIGHT),
    ";": Op(1100, INFIX_RIGHT),
    "*->": Op(1050, INFIX_RIGHT),
    ",": Op(1000, INFIX_RIGHT, padded=False),
    "=": Op(700, INFIX_NON, padded=False),
    "\\=": Op(700, INFIX_NON, padded=False),
    "<": Op(700, INFIX_NON, padded=False),
    "=<": Op(700, INFIX_NON, padded=False),
    ">": Op(700, INFIX_NON, padded=False),
    ">=": Op(700, INFIX_NON, padded=False),
    "is": Op(700, INFIX_NON),
    "+": Op(500, INFIX_LEFT, padded=False),
    "-": Op(500, INFIX_LEFT, padded=False),
    "*": Op(400, INFIX_LEFT, padded=False),
    "//": Op(400, INFIX_LEFT, padded=False),
    "mod": Op(400, INFIX_LEFT),
    ":": Op(200, INFIX_NON, padded=False),
}

# Symbolic tokens the lexer recognizes, longest first for maximal munch.
SYMBOLIC_TOKENS = sorted(
    ["?-", ":-", ";;", ";", "*->", ",", "=", "\\=", "<", "=<", ">", ">=",
     "+", "-", "*", "//", ":", "|"],
    key=len,
    reverse=True,
)
