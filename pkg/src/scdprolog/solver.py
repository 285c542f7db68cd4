"""Depth-first goal solver with committed sequential choice.

The machine runs an explicit goal stack (immutable cons cells, so saved
continuations are O(1) snapshots) against a choice-point stack. A `G0 ;; G1`
goal plants a barrier-marked choice point holding G1 plus a Commit marker
directly beneath G0's subgoals: the marker executes exactly when G0's proof
first completes, deleting that one choice point without disturbing anything
above it, so G0's own alternatives keep backtracking normally. If G0 fails
exhaustively first, ordinary backtracking reaches the barrier and runs G1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .errors import (
    BuiltinTypeError,
    DepthLimitExceeded,
    InstantiationError,
    UnknownPredicate,
)
from .terms import (
    Atom,
    AtomicGoal,
    BindingStore,
    Clause,
    Compound,
    Conj,
    Goal,
    Integer,
    Program,
    Scd,
    Term,
    Var,
    clause_var_namer,
    default_var_name,
    deref,
    format_term,
    functor_arity,
    goal_vars,
    iter_goal_terms,
    rename_fresh,
    resolve,
    term_vars,
)
from .unify import unify

# Goal stack: None or (entry, rest) where entry is a Goal or a Commit marker.
GoalStack = Optional[tuple]


@dataclass(frozen=True)
class Commit:
    barrier_id: int


@dataclass
class ClauseAlt:
    goal: Term
    clauses: tuple[Clause, ...]
    stack: GoalStack
    trail_mark: int


@dataclass
class ScdAlt:
    second: Goal
    stack: GoalStack
    trail_mark: int
    barrier_id: int


ChoicePoint = Union[ClauseAlt, ScdAlt]


@dataclass(frozen=True)
class Solution:
    """Query-variable name -> fully resolved term, in query order."""

    bindings: dict

    def __str__(self):
        return ", ".join(f"{name} = {format_term(t)}" for name, t in self.bindings.items())


@dataclass(frozen=True)
class CommitEvent:
    """Instrumentation record emitted each time a Commit marker executes."""

    barrier_id: int
    removed: bool
    matches_before: int
    others_before: int
    others_after: int


class Engine(Iterator[Solution]):
    """Solver state for one query; iterate it to pull solutions lazily."""

    def __init__(self, program: Program, goal: Goal, *,
                 occurs_check: bool = True,
                 strict_unknown: bool = False,
                 depth_limit: Optional[int] = None):
        self.program = program
        self.store = BindingStore()
        self.occurs_check = occurs_check
        self.strict_unknown = strict_unknown
        self.depth_limit = depth_limit
        self.step_count = 0
        self.choicepoints: list[ChoicePoint] = []
        self.commit_events: list[CommitEvent] = []
        self.query_vars = [v for v in goal_vars(goal) if v.hint is not None]
        self._fresh = _max_var_id(program, goal) + 1
        self._barriers = 0
        self.goal_stack: GoalStack = (goal, None)
        self._started = False
        self._done = False

    def new_var(self, hint: Optional[str] = None) -> Var:
        v = Var(self._fresh, hint)
        self._fresh += 1
        return v

    def __iter__(self) -> "Engine":
        return self

    def __next__(self) -> Solution:
        if self._done:
            raise StopIteration
        if self._started:
            ok = self._backtrack()
        else:
            self._started = True
            ok = True
        while ok:
            if self.goal_stack is None:
                return self._capture()
            entry, self.goal_stack = self.goal_stack
            if isinstance(entry, Commit):
                self._commit(entry.barrier_id)
            elif isinstance(entry, Conj):
                self.goal_stack = (entry.left, (entry.right, self.goal_stack))
            elif isinstance(entry, Scd):
                self._solve_scd(entry.first, entry.second)
            else:
                if not self._solve_atomic(entry.term):
                    ok = self._backtrack()
        self._done = True
        self.store.undo_to(0)
        raise StopIteration

    # -- goal reduction -------------------------------------------------------

    def _solve_scd(self, first: Goal, second: Goal) -> None:
        barrier_id = self._barriers
        self._barriers += 1
        self.choicepoints.append(
            ScdAlt(second, self.goal_stack, self.store.checkpoint(), barrier_id))
        self.goal_stack = (first, (Commit(barrier_id), self.goal_stack))

    def _commit(self, barrier_id: int) -> None:
        def matches(cp: ChoicePoint) -> bool:
            return isinstance(cp, ScdAlt) and cp.barrier_id == barrier_id

        matches_before = sum(1 for cp in self.choicepoints if matches(cp))
        others_before = len(self.choicepoints) - matches_before
        removed = False
        for i in range(len(self.choicepoints) - 1, -1, -1):
            if matches(self.choicepoints[i]):
                self.choicepoints.pop(i)
                removed = True
                break
        others_after = sum(1 for cp in self.choicepoints if not matches(cp))
        self.commit_events.append(
            CommitEvent(barrier_id, removed, matches_before, others_before, others_after))

    def _solve_atomic(self, term: Term) -> bool:
        t = deref(term, self.store)
        if isinstance(t, Var):
            raise InstantiationError("call")
        if isinstance(t, Integer):
            raise BuiltinTypeError("call", t, "goal must be an atom or compound term")
        name, arity = functor_arity(t)
        builtin = BUILTINS.get((name, arity))
        if builtin is not None:
            return builtin(self, t)
        return self._backchain(t)

    # -- backchaining ---------------------------------------------------------

    def _backchain(self, goal_term: Term, candidates: Optional[tuple[Clause, ...]] = None) -> bool:
        if self.depth_limit is not None and self.step_count >= self.depth_limit:
            raise DepthLimitExceeded(self.step_count)
        self.step_count += 1
        if candidates is None:
            name, arity = functor_arity(goal_term)
            candidates = self.program.lookup(name, arity)
            if not candidates and self.strict_unknown:
                raise UnknownPredicate(name, arity)
        mark = self.store.checkpoint()
        cont = self.goal_stack
        for i, clause in enumerate(candidates):
            renamed = rename_fresh(clause, self)
            if unify(goal_term, renamed.head, self.store, self.occurs_check):
                rest = candidates[i + 1:]
                if rest:
                    self.choicepoints.append(ClauseAlt(goal_term, rest, cont, mark))
                if renamed.body is not None:
                    self.goal_stack = (renamed.body, cont)
                return True
            # failed unify restored the store itself; try the next clause
        return False

    def _backtrack(self) -> bool:
        while self.choicepoints:
            cp = self.choicepoints.pop()
            self.store.undo_to(cp.trail_mark)
            if isinstance(cp, ScdAlt):
                self.goal_stack = (cp.second, cp.stack)
                return True
            self.goal_stack = cp.stack
            if self._backchain(cp.goal, cp.clauses):
                return True
        return False

    def _capture(self) -> Solution:
        return Solution({v.hint: resolve(v, self.store) for v in self.query_vars})


def solve(program: Program, goal: Goal, *,
          occurs_check: bool = True,
          strict_unknown: bool = False,
          depth_limit: Optional[int] = None) -> Engine:
    """Lazy stream of Solutions in depth-first, left-to-right, textual clause order."""
    return Engine(program, goal, occurs_check=occurs_check,
                  strict_unknown=strict_unknown, depth_limit=depth_limit)


def _max_var_id(program: Program, goal: Goal) -> int:
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
    return top


# -- builtins ------------------------------------------------------------------

def _bi_true(engine: Engine, t: Term) -> bool:
    return True


def _bi_fail(engine: Engine, t: Term) -> bool:
    return False


def _bi_unify(engine: Engine, t: Term) -> bool:
    return unify(t.args[0], t.args[1], engine.store, engine.occurs_check)


def _bi_not_unify(engine: Engine, t: Term) -> bool:
    mark = engine.store.checkpoint()
    if unify(t.args[0], t.args[1], engine.store, engine.occurs_check):
        engine.store.undo_to(mark)
        return False
    return True


def _bi_is(engine: Engine, t: Term) -> bool:
    value = eval_arith(t.args[1], engine.store, "is")
    return unify(t.args[0], Integer(value), engine.store, engine.occurs_check)


def _make_compare(name, relation):
    def compare(engine: Engine, t: Term) -> bool:
        left = eval_arith(t.args[0], engine.store, name)
        right = eval_arith(t.args[1], engine.store, name)
        return relation(left, right)
    return compare


def _trunc_div(left: int, right: int) -> int:
    # Integer division truncating toward zero (standard Prolog //).
    q = abs(left) // abs(right)
    return -q if (left < 0) != (right < 0) else q


def eval_arith(term: Term, store: BindingStore, builtin: str) -> int:
    """Evaluate a ground integer expression over +, -, *, // and mod."""
    t = deref(term, store)
    if isinstance(t, Integer):
        return t.value
    if isinstance(t, Var):
        raise InstantiationError(builtin)
    if isinstance(t, Compound) and len(t.args) == 2:
        op = t.functor
        if op in ("+", "-", "*", "//", "mod"):
            left = eval_arith(t.args[0], store, builtin)
            right = eval_arith(t.args[1], store, builtin)
            if op == "+":
                return left + right
            if op == "-":
                return left - right
            if op == "*":
                return left * right
            if right == 0:
                raise BuiltinTypeError(builtin, print_term_safe(t, store),
                                       "integer division by zero")
            return _trunc_div(left, right) if op == "//" else left % right
    raise BuiltinTypeError(builtin, print_term_safe(t, store))


def print_term_safe(term: Term, store: BindingStore) -> str:
    try:
        return format_term(resolve(term, store))
    except Exception:
        return repr(term)


BUILTINS = {
    ("true", 0): _bi_true,
    ("fail", 0): _bi_fail,
    ("=", 2): _bi_unify,
    ("\\=", 2): _bi_not_unify,
    ("is", 2): _bi_is,
    ("<", 2): _make_compare("<", lambda a, b: a < b),
    ("=<", 2): _make_compare("=<", lambda a, b: a <= b),
    (">", 2): _make_compare(">", lambda a, b: a > b),
    (">=", 2): _make_compare(">=", lambda a, b: a >= b),
}


# -- standard-Prolog translation -------------------------------------------------

def translate_goal(goal: Goal, var_name=None) -> str:
    """Soft-cut image of a goal: every `G0 ;; G1` becomes `( G0 *-> true ; G1 )`."""
    namer = var_name or default_var_name
    if isinstance(goal, AtomicGoal):
        return format_term(goal.term, namer, max_prec=999)
    if isinstance(goal, Conj):
        return f"{translate_goal(goal.left, namer)}, {translate_goal(goal.right, namer)}"
    return f"( {translate_goal(goal.first, namer)} *-> true ; {translate_goal(goal.second, namer)} )"


def translate_to_std(program: Program, goal: Optional[Goal] = None, *,
                     occurs_check: bool = True) -> str:
    """Standard-Prolog text for a program (and optionally a query, as a comment).

    Clauses in the plain Horn fragment pass through unchanged; `;;` bodies
    are rewritten to soft-cut conditionals. The output re-parses under this
    package's own grammar (which carries `*->` and `;` for that purpose).
    """
    lines = []
    if occurs_check:
        lines.append(":- set_prolog_flag(occurs_check, true).")
    for clause in program.clauses:
        namer = clause_var_namer(clause)
        head = format_term(clause.head, namer)
        if clause.body is None:
            lines.append(f"{head}.")
        else:
            lines.append(f"{head} :- {translate_goal(clause.body, namer)}.")
    if goal is not None:
        lines.append(f"% ?- {translate_goal(goal)}.")
    return "\n".join(lines) + "\n"
