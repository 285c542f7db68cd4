"""Core term and goal representation, binding store, and term printing.

Terms are immutable; all mutation lives in the BindingStore, whose trail
makes every binding undoable for backtracking. Variables are compared by
id only — the display hint is presentation metadata.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Union

from .errors import CyclicTerm
from .ops import OPERATORS


@dataclass(frozen=True)
class Var:
    id: int
    hint: Optional[str] = field(default=None, compare=False)

    def __repr__(self):
        return f"Var({self.id}{', ' + self.hint if self.hint else ''})"


@dataclass(frozen=True)
class Atom:
    name: str

    def __repr__(self):
        return f"Atom({self.name})"


@dataclass(frozen=True)
class Integer:
    value: int

    def __repr__(self):
        return f"Integer({self.value})"


@dataclass(frozen=True)
class Compound:
    functor: str
    args: tuple["Term", ...]

    def __post_init__(self):
        # Zero-arity symbols must be Atoms, not empty Compounds.
        assert len(self.args) >= 1

    def __repr__(self):
        return f"Compound({self.functor}, {list(self.args)})"


Term = Union[Var, Atom, Integer, Compound]

NIL = Atom("[]")
TRUE = Atom("true")


def make_list(items, tail: Term = NIL) -> Term:
    """Build a '.'/2 chain from a Python sequence."""
    out = tail
    for item in reversed(list(items)):
        out = Compound(".", (item, out))
    return out


@dataclass(frozen=True)
class AtomicGoal:
    term: Term  # Atom or Compound


@dataclass(frozen=True)
class Conj:
    left: "Goal"
    right: "Goal"


@dataclass(frozen=True)
class Scd:
    """Sequential-choice disjunction: try first; only on finite failure, second."""

    first: "Goal"
    second: "Goal"


Goal = Union[AtomicGoal, Conj, Scd]


@dataclass(frozen=True)
class Clause:
    head: Term  # Atom or Compound, never Var/Integer
    body: Optional[Goal] = None


def functor_arity(t: Term) -> tuple[str, int]:
    if isinstance(t, Atom):
        return (t.name, 0)
    if isinstance(t, Compound):
        return (t.functor, len(t.args))
    raise ValueError(f"no functor/arity for {t!r}")


@dataclass(frozen=True)
class Program:
    clauses: tuple[Clause, ...]
    index: dict

    def lookup(self, name: str, arity: int) -> tuple[Clause, ...]:
        return self.index.get((name, arity), ())


def make_program(clauses) -> Program:
    clauses = tuple(clauses)
    index: dict[tuple[str, int], list[Clause]] = {}
    for clause in clauses:
        index.setdefault(functor_arity(clause.head), []).append(clause)
    return Program(clauses, {key: tuple(val) for key, val in index.items()})


class BindingStore:
    """Variable-id -> term map with an undo trail.

    undo_to(checkpoint) restores the store to exactly its state when the
    checkpoint was taken; bind() refuses to overwrite a live binding.
    """

    __slots__ = ("bindings", "trail")

    def __init__(self):
        self.bindings: dict[int, Term] = {}
        self.trail: list[int] = []

    def bind(self, var: Var, value: Term) -> None:
        assert var.id not in self.bindings, f"rebinding _G{var.id}"
        self.bindings[var.id] = value
        self.trail.append(var.id)

    def checkpoint(self) -> int:
        return len(self.trail)

    def undo_to(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            del self.bindings[trail.pop()]

    def snapshot(self) -> dict[int, Term]:
        return dict(self.bindings)


def deref(term: Term, store: BindingStore) -> Term:
    """Follow the outermost variable chain; no descent into arguments."""
    t = term
    hops = 0
    # A chain longer than the binding count implies a cycle, which only
    # --no-occurs-check stores could contain.
    limit = len(store.bindings) + 1
    while isinstance(t, Var):
        bound = store.bindings.get(t.id)
        if bound is None:
            return t
        hops += 1
        if hops > limit:
            raise CyclicTerm(f"variable chain through _G{t.id} exceeds binding count")
        t = bound
    return t


def resolve(term: Term, store: BindingStore) -> Term:
    """Apply the store's substitution fully; unbound variables remain.

    Iterative so term depth never hits the Python call stack; detects
    cycles (possible with the occurs check off) and raises CyclicTerm.
    """
    bindings = store.bindings
    out: list[Term] = []
    work: list[tuple] = [(term, frozenset())]
    while work:
        item = work.pop()
        if item[0] is _BUILD:
            _, functor, argc = item
            args = tuple(out[len(out) - argc:])
            del out[len(out) - argc:]
            out.append(Compound(functor, args))
            continue
        t, open_ids = item
        while isinstance(t, Var):
            bound = bindings.get(t.id)
            if bound is None:
                break
            if t.id in open_ids:
                raise CyclicTerm(f"cyclic binding through _G{t.id}")
            open_ids = open_ids | {t.id}
            t = bound
        if isinstance(t, Compound):
            work.append((_BUILD, t.functor, len(t.args)))
            for arg in reversed(t.args):
                work.append((arg, open_ids))
        else:
            out.append(t)
    return out[0]


_BUILD = object()


def term_vars(term: Term) -> list[Var]:
    """Distinct variables of a term, in first-occurrence order."""
    seen: dict[int, Var] = {}
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            seen.setdefault(t.id, t)
        elif isinstance(t, Compound):
            stack.extend(reversed(t.args))
    return list(seen.values())


def goal_vars(goal: Goal) -> list[Var]:
    """Distinct variables of a goal tree, left-to-right."""
    seen: dict[int, Var] = {}
    for term in iter_goal_terms(goal):
        for v in term_vars(term):
            seen.setdefault(v.id, v)
    return list(seen.values())


def iter_goal_terms(goal: Goal) -> Iterator[Term]:
    stack = [goal]
    while stack:
        g = stack.pop()
        if isinstance(g, AtomicGoal):
            yield g.term
        else:
            stack.append(g.right if isinstance(g, Conj) else g.second)
            stack.append(g.left if isinstance(g, Conj) else g.first)


def rename_fresh(clause: Clause, engine) -> Clause:
    """Fresh-rename every variable in a clause, consistently across head and body.

    `engine` supplies fresh variables via new_var(); the fresh copies carry
    no display hint so they print as _G<n>.
    """
    mapping: dict[int, Var] = {}

    def walk(t: Term) -> Term:
        if isinstance(t, Var):
            fresh = mapping.get(t.id)
            if fresh is None:
                fresh = engine.new_var()
                mapping[t.id] = fresh
            return fresh
        if isinstance(t, Compound):
            return Compound(t.functor, tuple(walk(a) for a in t.args))
        return t

    def walk_goal(g: Goal) -> Goal:
        if isinstance(g, AtomicGoal):
            return AtomicGoal(walk(g.term))
        if isinstance(g, Conj):
            return Conj(walk_goal(g.left), walk_goal(g.right))
        return Scd(walk_goal(g.first), walk_goal(g.second))

    body = walk_goal(clause.body) if clause.body is not None else None
    return Clause(walk(clause.head), body)


def goal_to_term(goal: Goal) -> Term:
    """Inverse of the parser's goal construction: Conj -> ','/2, Scd -> ';;'/2."""
    if isinstance(goal, AtomicGoal):
        return goal.term
    if isinstance(goal, Conj):
        return Compound(",", (goal_to_term(goal.left), goal_to_term(goal.right)))
    return Compound(";;", (goal_to_term(goal.first), goal_to_term(goal.second)))


def clause_to_term(clause: Clause) -> Term:
    if clause.body is None:
        return clause.head
    return Compound(":-", (clause.head, goal_to_term(clause.body)))


def variant(a: Term, b: Term) -> bool:
    """Structural equality up to a consistent renaming of variables."""
    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if isinstance(x, Var) and isinstance(y, Var):
            if fwd.setdefault(x.id, y.id) != y.id:
                return False
            if bwd.setdefault(y.id, x.id) != x.id:
                return False
        elif isinstance(x, Atom) and isinstance(y, Atom):
            if x.name != y.name:
                return False
        elif isinstance(x, Integer) and isinstance(y, Integer):
            if x.value != y.value:
                return False
        elif isinstance(x, Compound) and isinstance(y, Compound):
            if x.functor != y.functor or len(x.args) != len(y.args):
                return False
            stack.extend(zip(x.args, y.args))
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_PLAIN_ATOM = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")

VarNamer = Callable[[Var], str]


def default_var_name(v: Var) -> str:
    return f"_G{v.id}"


def hinted_var_name(v: Var) -> str:
    return v.hint if v.hint is not None else f"_G{v.id}"


def atom_text(name: str) -> str:
    if _PLAIN_ATOM.match(name) or name == "[]":
        return name
    escaped = name.replace("\\", "\\\\").replace("'", "\\'")
    escaped = escaped.replace("\n", "\\n").replace("\t", "\\t")
    return f"'{escaped}'"


def format_term(term: Term, var_name: VarNamer = default_var_name,
                max_prec: int = 1200) -> str:
    """Concrete syntax for a term that is already fully resolved.

    Round-trips through the parser: infix operators print infix with
    minimal parenthesization, '.'/2 chains print with list sugar.
    """
    return _format(term, max_prec, var_name)


def print_term(term: Term, store: Optional[BindingStore] = None,
               var_name: VarNamer = default_var_name) -> str:
    """Resolve against the store (if given), then render."""
    if store is not None:
        term = resolve(term, store)
    return format_term(term, var_name)


def _format(t: Term, max_prec: int, var_name: VarNamer) -> str:
    if isinstance(t, Var):
        return var_name(t)
    if isinstance(t, Integer):
        return str(t.value)
    if isinstance(t, Atom):
        return atom_text(t.name)
    if t.functor == "." and len(t.args) == 2:
        return _format_list(t, var_name)
    op = OPERATORS.get(t.functor) if len(t.args) == 2 else None
    if op is not None:
        left = _format(t.args[0], op.left_max, var_name)
        right = _format(t.args[1], op.right_max, var_name)
        if t.functor == ",":
            body = f"{left}, {right}"
        elif op.padded:
            body = f"{left} {t.functor} {right}"
        else:
            body = f"{left}{t.functor}{right}"
        return f"({body})" if op.prec > max_prec else body
    args = ",".join(_format(a, 999, var_name) for a in t.args)
    return f"{atom_text(t.functor)}({args})"


def format_clause(clause: Clause) -> str:
    """Native concrete syntax for a stored clause, using source variable names."""
    return format_term(clause_to_term(clause), clause_var_namer(clause)) + "."


def clause_var_namer(clause: Clause) -> VarNamer:
    ordered = term_vars(clause_to_term(clause))
    names: dict[int, str] = {}
    used: set[str] = set()
    for v in ordered:
        name = v.hint
        if name is None or name in used:
            name = f"_G{v.id}"
        names[v.id] = name
        used.add(name)
    return lambda v: names.get(v.id, f"_G{v.id}")


def _format_list(t: Term, var_name: VarNamer) -> str:
    elems = []
    node: Term = t
    while isinstance(node, Compound) and node.functor == "." and len(node.args) == 2:
        elems.append(_format(node.args[0], 999, var_name))
        node = node.args[1]
    if node == NIL:
        return "[" + ",".join(elems) + "]"
    return "[" + ",".join(elems) + "|" + _format(node, 999, var_name) + "]"
