"""Random program and goal generator for the differential test suites.

Instances are kept small enough for the naive oracle to enumerate fully but
rich enough to exercise clause backtracking and nested sequential choice:
up to 6 predicates of arity <= 2, up to 4 clauses each, bodies of up to 3
literals with at most 2 `;;` nodes, constants from a 5-symbol pool.
Recursion is permitted but biased against (calls mostly target later
predicates) so most instances terminate inside the oracle's depth bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .terms import (
    Atom,
    AtomicGoal,
    Clause,
    Compound,
    Conj,
    Goal,
    Program,
    Scd,
    Term,
    Var,
    make_program,
)

CONSTANTS = ("a", "b", "c", "d", "e")
VAR_HINTS = ("X", "Y", "Z")


@dataclass
class GenConfig:
    max_preds: int = 6
    max_arity: int = 2
    max_clauses: int = 4
    max_body: int = 3
    max_scd_per_clause: int = 2
    constants: tuple = CONSTANTS
    # Probability that a body call targets a strictly later predicate
    # (acyclic); the remainder may recurse.
    forward_bias: float = 0.85


@dataclass
class _ClauseScope:
    """Variable pool for one clause or query; ids are scope-local."""

    next_id: int = 0
    vars: dict = field(default_factory=dict)

    def var(self, rng: random.Random) -> Var:
        hint = rng.choice(VAR_HINTS)
        if hint not in self.vars:
            self.vars[hint] = Var(self.next_id, hint)
            self.next_id += 1
        return self.vars[hint]


def random_program(rng: random.Random, config: GenConfig = GenConfig(), *,
                   allow_scd: bool = True) -> tuple[Program, list]:
    """Returns (program, signature list) where signatures are (name, arity)."""
    n = rng.randint(1, config.max_preds)
    sigs = [(f"p{i}", rng.randint(0, config.max_arity)) for i in range(n)]
    clauses = []
    for i, (name, arity) in enumerate(sigs):
        for _ in range(rng.randint(0, config.max_clauses)):
            clauses.append(_random_clause(rng, config, sigs, i, name, arity, allow_scd))
    return make_program(clauses), sigs


def _random_clause(rng, config, sigs, index, name, arity, allow_scd) -> Clause:
    scope = _ClauseScope()
    head = _call_term(rng, config, scope, name, arity)
    body_len = rng.randint(0, config.max_body)
    if body_len == 0:
        return Clause(head)
    literals = [_random_literal(rng, config, sigs, index, scope) for _ in range(body_len)]
    budget = [config.max_scd_per_clause if allow_scd else 0]
    return Clause(head, _combine(rng, literals, budget))


def _combine(rng, literals: list[Goal], scd_budget: list) -> Goal:
    if len(literals) == 1:
        return literals[0]
    split = rng.randint(1, len(literals) - 1)
    left = _combine(rng, literals[:split], scd_budget)
    right = _combine(rng, literals[split:], scd_budget)
    if scd_budget[0] > 0 and rng.random() < 0.4:
        scd_budget[0] -= 1
        return Scd(left, right)
    return Conj(left, right)


def _random_literal(rng, config, sigs, index, scope) -> Goal:
    roll = rng.random()
    if roll < 0.75:
        target = _pick_callee(rng, config, sigs, index)
        name, arity = target
        return AtomicGoal(_call_term(rng, config, scope, name, arity))
    if roll < 0.80:
        return AtomicGoal(Atom("true"))
    if roll < 0.85:
        return AtomicGoal(Atom("fail"))
    return AtomicGoal(Compound("=", (scope.var(rng), _const(rng, config))))


def _pick_callee(rng, config, sigs, index):
    later = sigs[index + 1:]
    if later and rng.random() < config.forward_bias:
        return rng.choice(later)
    return rng.choice(sigs)


def _call_term(rng, config, scope, name, arity) -> Term:
    if arity == 0:
        return Atom(name)
    args = tuple(scope.var(rng) if rng.random() < 0.5 else _const(rng, config)
                 for _ in range(arity))
    return Compound(name, args)


def _const(rng, config) -> Term:
    return Atom(rng.choice(config.constants))


def random_goal(rng: random.Random, sigs, config: GenConfig = GenConfig(), *,
                scope: _ClauseScope | None = None,
                max_literals: int = 2,
                allow_scd: bool = False) -> Goal:
    """A query over the program's predicates; shares `scope` if given."""
    scope = scope if scope is not None else _ClauseScope()
    count = rng.randint(1, max_literals)
    literals = []
    for _ in range(count):
        name, arity = rng.choice(sigs)
        literals.append(AtomicGoal(_call_term(rng, config, scope, name, arity)))
    budget = [2 if allow_scd else 0]
    return _combine(rng, literals, budget)


def query_scope() -> _ClauseScope:
    return _ClauseScope()
