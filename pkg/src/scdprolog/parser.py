"""Tokenizer and precedence-climbing parser for the clause/goal grammar.

Concrete syntax is standard Prolog restricted to the fixed operator table,
with `;;` as the sequential-choice disjunction. Clauses end with `.`
followed by whitespace or end-of-input; `%` starts a line comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import BadClauseHead, LexError, ParseError, Position
from .ops import OPERATORS, SYMBOLIC_TOKENS
from .terms import (
    NIL,
    Atom,
    AtomicGoal,
    Clause,
    Compound,
    Conj,
    Goal,
    Integer,
    Program,
    Scd,
    Term,
    Var,
    make_list,
    make_program,
)

ATOM = "ATOM"
VARIABLE = "VARIABLE"
INTEGER = "INTEGER"
PUNCT = "PUNCT"
END = "END"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: Position
    # Position just past the lexeme; lets the parser require `f(` adjacency.
    end: Position


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def pos() -> Position:
        return Position(line, col)

    while i < n:
        c = source[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "%":
            while i < n and source[i] != "\n":
                i += 1
            continue
        start = pos()
        if c.islower() and c.isalpha():
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            col += j - i
            tokens.append(Token(ATOM, source[i:j], start, pos()))
            i = j
            continue
        if c == "_" or (c.isalpha() and c.isupper()):
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            col += j - i
            tokens.append(Token(VARIABLE, source[i:j], start, pos()))
            i = j
            continue
        if c.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            col += j - i
            tokens.append(Token(INTEGER, source[i:j], start, pos()))
            i = j
            continue
        if c == "'":
            text, i, line, col = _scan_quoted(source, i, line, col)
            tokens.append(Token(ATOM, text, start, pos()))
            continue
        if c == ".":
            nxt = source[i + 1] if i + 1 < n else None
            if nxt is None or nxt in " \t\r\n%":
                col += 1
                tokens.append(Token(END, ".", start, pos()))
                i += 1
                continue
            raise LexError(start, "'.' must terminate a clause")
        if c in "()[]":
            col += 1
            tokens.append(Token(PUNCT, c, start, pos()))
            i += 1
            continue
        for sym in SYMBOLIC_TOKENS:
            if source.startswith(sym, i):
                col += len(sym)
                tokens.append(Token(PUNCT, sym, start, pos()))
                i += len(sym)
                break
        else:
            raise LexError(start, f"illegal character {c!r}")
    return tokens


def _scan_quoted(source: str, i: int, line: int, col: int):
    """Scan a quoted atom starting at the opening quote; returns (text, i, line, col)."""
    start = Position(line, col)
    i += 1
    col += 1
    out: list[str] = []
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\n":
            break
        if c == "'":
            if i + 1 < n and source[i + 1] == "'":
                out.append("'")
                i += 2
                col += 2
                continue
            return "".join(out), i + 1, line, col + 1
        if c == "\\":
            if i + 1 >= n:
                break
            esc = source[i + 1]
            mapped = {"n": "\n", "t": "\t", "\\": "\\", "'": "'"}.get(esc)
            if mapped is None:
                raise LexError(Position(line, col), f"unknown escape \\{esc}")
            out.append(mapped)
            i += 2
            col += 2
            continue
        out.append(c)
        i += 1
        col += 1
    raise LexError(start, "unterminated quoted atom")


class _Cursor:
    def __init__(self, tokens: list[Token], source_end: Position):
        self.tokens = tokens
        self.i = 0
        self.source_end = source_end

    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Optional[Token]:
        tok = self.peek()
        if tok is not None:
            self.i += 1
        return tok

    def here(self) -> Position:
        tok = self.peek()
        return tok.position if tok is not None else self.source_end

    def expect(self, kind: str, text: Optional[str] = None, what: Optional[str] = None) -> Token:
        tok = self.peek()
        wanted = what or (text if text is not None else kind)
        if tok is None:
            raise ParseError(self.source_end, wanted, "end of input")
        if tok.kind != kind or (text is not None and tok.text != text):
            raise ParseError(tok.position, wanted, tok.text)
        self.i += 1
        return tok


class _TermParser:
    """One parse unit (program or query); owns the variable-id counter."""

    def __init__(self, source: str):
        self.tokens = tokenize(source)
        end = self.tokens[-1].end if self.tokens else Position(1, 1)
        self.cur = _Cursor(self.tokens, end)
        self.next_var_id = 0
        self.clause_vars: dict[str, Var] = {}

    def fresh_var(self, hint: Optional[str]) -> Var:
        v = Var(self.next_var_id, hint)
        self.next_var_id += 1
        return v

    def named_var(self, name: str) -> Var:
        if name == "_":
            return self.fresh_var(None)  # anonymous: fresh per occurrence
        v = self.clause_vars.get(name)
        if v is None:
            v = self.fresh_var(name)
            self.clause_vars[name] = v
        return v

    # -- grammar ------------------------------------------------------------

    def parse_expr(self, max_prec: int) -> Term:
        left = self.parse_primary()
        left_prec = 0
        while True:
            tok = self.cur.peek()
            if tok is None or tok.kind not in (PUNCT, ATOM):
                break
            op = OPERATORS.get(tok.text)
            if op is None or op.prec > max_prec or left_prec > op.left_max:
                break
            self.cur.next()
            right = self.parse_expr(op.right_max)
            left = Compound(tok.text, (left, right))
            left_prec = op.prec
        return left

    def parse_primary(self) -> Term:
        tok = self.cur.next()
        if tok is None:
            raise ParseError(self.cur.source_end, "a term", "end of input")
        if tok.kind == ATOM:
            nxt = self.cur.peek()
            if (nxt is not None and nxt.kind == PUNCT and nxt.text == "("
                    and nxt.position == tok.end):
                return self.parse_compound(tok.text)
            return Atom(tok.text)
        if tok.kind == VARIABLE:
            return self.named_var(tok.text)
        if tok.kind == INTEGER:
            return Integer(int(tok.text))
        if tok.kind == PUNCT:
            if tok.text == "(":
                inner = self.parse_expr(1200)
                self.cur.expect(PUNCT, ")")
                return inner
            if tok.text == "[":
                return self.parse_list()
            if tok.text == "-":
                nxt = self.cur.peek()
                if nxt is not None and nxt.kind == INTEGER:
                    self.cur.next()
                    return Integer(-int(nxt.text))
        raise ParseError(tok.position, "a term", tok.text)

    def parse_compound(self, functor: str) -> Term:
        self.cur.expect(PUNCT, "(")
        args = [self.parse_expr(999)]
        while True:
            tok = self.cur.peek()
            if tok is not None and tok.kind == PUNCT and tok.text == ",":
                self.cur.next()
                args.append(self.parse_expr(999))
                continue
            self.cur.expect(PUNCT, ")", what="',' or ')'")
            return Compound(functor, tuple(args))

    def parse_list(self) -> Term:
        tok = self.cur.peek()
        if tok is not None and tok.kind == PUNCT and tok.text == "]":
            self.cur.next()
            return NIL
        elems = [self.parse_expr(999)]
        tail: Term = NIL
        while True:
            tok = self.cur.peek()
            if tok is not None and tok.kind == PUNCT and tok.text == ",":
                self.cur.next()
                elems.append(self.parse_expr(999))
                continue
            if tok is not None and tok.kind == PUNCT and tok.text == "|":
                self.cur.next()
                tail = self.parse_expr(999)
            self.cur.expect(PUNCT, "]", what="',', '|' or ']'")
            return make_list(elems, tail)

    def parse_clause(self) -> Clause:
        self.clause_vars = {}
        start = self.cur.here()
        term = self.parse_expr(1200)
        self.cur.expect(END, what="'.'")
        if isinstance(term, Compound) and term.functor == ":-" and len(term.args) == 2:
            head, body_term = term.args
            body: Optional[Goal] = self.to_goal(body_term, start)
        else:
            head, body = term, None
        if not isinstance(head, (Atom, Compound)):
            raise BadClauseHead(start)
        if isinstance(head, Compound) and head.functor in (",", ";;", ";", "*->", ":-"):
            raise BadClauseHead(start, f"cannot define control construct '{head.functor}'")
        return Clause(head, body)

    def to_goal(self, term: Term, position: Position) -> Goal:
        if isinstance(term, Compound) and len(term.args) == 2:
            if term.functor == ",":
                return Conj(self.to_goal(term.args[0], position),
                            self.to_goal(term.args[1], position))
            if term.functor == ";;":
                return Scd(self.to_goal(term.args[0], position),
                           self.to_goal(term.args[1], position))
        if isinstance(term, (Atom, Compound)):
            return AtomicGoal(term)
        found = "a variable" if isinstance(term, Var) else "an integer"
        raise ParseError(position, "a callable goal", found)


def parse_program(source: str) -> Program:
    p = _TermParser(source)
    clauses = []
    while p.cur.peek() is not None:
        clauses.append(p.parse_clause())
    return make_program(clauses)


def parse_query(source: str) -> Goal:
    p = _TermParser(source)
    start = p.cur.here()
    tok = p.cur.peek()
    if tok is not None and tok.kind == PUNCT and tok.text == "?-":
        p.cur.next()
    term = p.parse_expr(1200)
    p.cur.expect(END, what="'.'")
    trailing = p.cur.peek()
    if trailing is not None:
        raise ParseError(trailing.position, "end of input", trailing.text)
    return p.to_goal(term, start)


def parse_term(source: str) -> Term:
    """Parse a single term terminated by '.'; handy for tests and goldens."""
    p = _TermParser(source)
    term = p.parse_expr(1200)
    p.cur.expect(END, what="'.'")
    return term
