"""Independent bounded-depth reference evaluator for differential testing.

Deliberately shares only the Term/Goal data types with the solver: search
is naive recursive enumeration over eager substitution dictionaries (no
trail, no choice-point stack), and `;;` is evaluated by its definition —
fully enumerate the first disjunct; if that list is non-empty it IS the
answer, otherwise the second disjunct's list is.

A result of Solutions(...) is claimed only when the entire bounded search
tree was explored; any branch hitting the depth bound (or the total step
budget) yields DepthExhausted instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .terms import (
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
    functor_arity,
    goal_vars,
    iter_goal_terms,
    term_vars,
)

Subst = dict  # var id -> Term


@dataclass(frozen=True)
class OracleResult:
    exhausted: bool
    solutions: tuple = ()  # each: dict of query-variable name -> resolved Term

    @staticmethod
    def found(solutions) -> "OracleResult":
        return OracleResult(False, tuple(solutions))

    @staticmethod
    def depth_exhausted() -> "OracleResult":
        return OracleResult(True)


class _Exhausted(Exception):
    pass


def oracle_solve(program: Program, goal: Goal, depth_bound: int, *,
                 occurs_check: bool = True,
                 step_budget: int = 200_000) -> OracleResult:
    """Complete depth-first solution list of the goal, or DepthExhausted.

    depth_bound limits backchain nesting along any derivation branch;
    step_budget caps total backchain steps so pathological instances are
    reported as exhausted rather than enumerated forever.
    """
    assert depth_bound >= 1
    state = _State(program, _fresh_counter(program, goal), occurs_check, step_budget)
    try:
        substs = state.solve(goal, {}, depth_bound)
    except _Exhausted:
        return OracleResult.depth_exhausted()
    named = [v for v in goal_vars(goal) if v.hint is not None]
    return OracleResult.found(
        {v.hint: _apply(s, v) for v in named} for s in substs)


class _State:
    def __init__(self, program: Program, counter, occurs_check: bool, step_budget: int):
        self.program = program
        self.counter = counter
        self.occurs_check = occurs_check
        self.steps_left = step_budget

    def solve(self, goal: Goal, s: Subst, depth: int) -> list[Subst]:
        if isinstance(goal, AtomicGoal):
            return self.solve_atom(goal.term, s, depth)
        if isinstance(goal, Conj):
            out: list[Subst] = []
            for s0 in self.solve(goal.left, s, depth):
                out.extend(self.solve(goal.right, s0, depth))
            return out
        # Sequential choice, straight from its definition.
        first = self.solve(goal.first, s, depth)
        if first:
            return first
        return self.solve(goal.second, s, depth)

    def solve_atom(self, term: Term, s: Subst, depth: int) -> list[Subst]:
        name, arity = functor_arity(term)
        handler = _BUILTINS.get((name, arity))
        if handler is not None:
            return handler(self, term, s)
        self.steps_left -= 1
        if self.steps_left < 0 or depth <= 0:
            raise _Exhausted
        out: list[Subst] = []
        for clause in self.program.lookup(name, arity):
            renamed = self.rename(clause)
            s1 = unify_subst(term, renamed.head, s, self.occurs_check)
            if s1 is None:
                continue
            if renamed.body is None:
                out.append(s1)
            else:
                out.extend(self.solve(renamed.body, s1, depth - 1))
        return out

    def rename(self, clause: Clause) -> Clause:
        mapping: dict[int, Var] = {}

        def walk(t: Term) -> Term:
            if isinstance(t, Var):
                if t.id not in mapping:
                    mapping[t.id] = Var(next(self.counter))
                return mapping[t.id]
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


def _fresh_counter(program: Program, goal: Goal):
    top = -1
    for v in goal_vars(goal):
        top = max(top, v.id)
    for clause in program.clauses:
        for v in term_vars(clause.head):
            top = max(top, v.id)
        if clause.body is not None:
            for term in iter_goal_terms(clause.body):
                for v in term_vars(term):
                    top = max(top, v.id)
    return itertools.count(top + 1)


# -- textbook substitution machinery ------------------------------------------

def walk_shallow(t: Term, s: Subst) -> Term:
    while isinstance(t, Var) and t.id in s:
        t = s[t.id]
    return t


def _apply(s: Subst, t: Term) -> Term:
    t = walk_shallow(t, s)
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(_apply(s, a) for a in t.args))
    return t


def _occurs_in(var_id: int, t: Term, s: Subst) -> bool:
    t = walk_shallow(t, s)
    if isinstance(t, Var):
        return t.id == var_id
    if isinstance(t, Compound):
        return any(_occurs_in(var_id, a, s) for a in t.args)
    return False


def unify_subst(a: Term, b: Term, s: Subst, occurs_check: bool = True) -> Optional[Subst]:
    """Robinson unification over substitution dicts; returns None on clash."""
    a = walk_shallow(a, s)
    b = walk_shallow(b, s)
    if isinstance(a, Var) and isinstance(b, Var) and a.id == b.id:
        return s
    if isinstance(a, Var):
        if occurs_check and _occurs_in(a.id, b, s):
            return None
        s1 = dict(s)
        s1[a.id] = b
        return s1
    if isinstance(b, Var):
        return unify_subst(b, a, s, occurs_check)
    if isinstance(a, Atom) and isinstance(b, Atom):
        return s if a.name == b.name else None
    if isinstance(a, Integer) and isinstance(b, Integer):
        return s if a.value == b.value else None
    if (isinstance(a, Compound) and isinstance(b, Compound)
            and a.functor == b.functor and len(a.args) == len(b.args)):
        for x, y in zip(a.args, b.args):
            s = unify_subst(x, y, s, occurs_check)
            if s is None:
                return None
        return s
    return None


# -- builtins (independent implementations) -----------------------------------

def _ob_true(state, term, s):
    return [s]


def _ob_fail(state, term, s):
    return []


def _ob_eq(state, term, s):
    s1 = unify_subst(term.args[0], term.args[1], s, state.occurs_check)
    return [s1] if s1 is not None else []


def _ob_neq(state, term, s):
    s1 = unify_subst(term.args[0], term.args[1], s, state.occurs_check)
    return [] if s1 is not None else [s]


def _ob_is(state, term, s):
    value = _eval(term.args[1], s)
    s1 = unify_subst(term.args[0], Integer(value), s, state.occurs_check)
    return [s1] if s1 is not None else []


def _ob_compare(relation):
    def handler(state, term, s):
        return [s] if relation(_eval(term.args[0], s), _eval(term.args[1], s)) else []
    return handler


def _eval(t: Term, s: Subst) -> int:
    t = walk_shallow(t, s)
    if isinstance(t, Integer):
        return t.value
    if isinstance(t, Compound) and len(t.args) == 2 and t.functor in ("+", "-", "*", "//", "mod"):
        left, right = _eval(t.args[0], s), _eval(t.args[1], s)
        if t.functor == "+":
            return left + right
        if t.functor == "-":
            return left - right
        if t.functor == "*":
            return left * right
        if t.functor == "//":
            q = abs(left) // abs(right)
            return -q if (left < 0) != (right < 0) else q
        return left % right
    raise ValueError(f"not a ground integer expression: {t!r}")


_BUILTINS = {
    ("true", 0): _ob_true,
    ("fail", 0): _ob_fail,
    ("=", 2): _ob_eq,
    ("\\=", 2): _ob_neq,
    ("is", 2): _ob_is,
    ("<", 2): _ob_compare(lambda a, b: a < b),
    ("=<", 2): _ob_compare(lambda a, b: a <= b),
    (">", 2): _ob_compare(lambda a, b: a > b),
    (">=", 2): _ob_compare(lambda a, b: a >= b),
}


# -- solution comparison --------------------------------------------------------

def canonical_solution(bindings: dict) -> tuple:
    """Hashable form of an answer, unbound variables renamed canonically."""
    mapping: dict[int, int] = {}

    def canon(t: Term):
        if isinstance(t, Var):
            return ("var", mapping.setdefault(t.id, len(mapping)))
        if isinstance(t, Atom):
            return ("atom", t.name)
        if isinstance(t, Integer):
            return ("int", t.value)
        return ("compound", t.functor, tuple(canon(a) for a in t.args))

    return tuple((name, canon(t)) for name, t in bindings.items())


def same_solutions(xs, ys) -> bool:
    """Equal answer sequences (content, order, multiplicity) up to renaming."""
    xs = list(xs)
    ys = list(ys)
    if len(xs) != len(ys):
        return False
    return all(canonical_solution(x) == canonical_solution(y) for x, y in zip(xs, ys))
