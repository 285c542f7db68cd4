"""Textbook Robinson unification, kept independent of the engine's unifier.

Works over eager, fully-applied substitution maps (composition on every
binding) with no trail and no store; only the term datatypes are shared.
Used as the oracle for the differential unification tests.
"""

from __future__ import annotations

from typing import Optional

from scdprolog import Atom, Compound, Integer, Term, Var


def apply_subst(subst: dict, term: Term) -> Term:
    if isinstance(term, Var):
        replacement = subst.get(term.id)
        return term if replacement is None else replacement
    if isinstance(term, Compound):
        return Compound(term.functor, tuple(apply_subst(subst, a) for a in term.args))
    return term


def occurs_in(var_id: int, term: Term) -> bool:
    if isinstance(term, Var):
        return term.id == var_id
    if isinstance(term, Compound):
        return any(occurs_in(var_id, a) for a in term.args)
    return False


def robinson_mgu(a: Term, b: Term) -> Optional[dict]:
    """Most general unifier as an idempotent map, or None if not unifiable."""
    subst: dict[int, Term] = {}
    equations = [(a, b)]
    while equations:
        x, y = equations.pop()
        x = apply_subst(subst, x)
        y = apply_subst(subst, y)
        if x == y:
            continue
        if isinstance(x, Var):
            if occurs_in(x.id, y):
                return None
            binding = {x.id: y}
            subst = {vid: apply_subst(binding, t) for vid, t in subst.items()}
            subst[x.id] = y
            continue
        if isinstance(y, Var):
            equations.append((y, x))
            continue
        if isinstance(x, Atom) and isinstance(y, Atom) and x.name == y.name:
            continue
        if isinstance(x, Integer) and isinstance(y, Integer) and x.value == y.value:
            continue
        if (isinstance(x, Compound) and isinstance(y, Compound)
                and x.functor == y.functor and len(x.args) == len(y.args)):
            equations.extend(zip(x.args, y.args))
            continue
        return None
    return subst
