"""First-order unification with trail recording.

Iterative (explicit worklist) so term depth never touches the call stack.
On failure the store is restored to its state at entry; on success every
new binding is on the trail.
"""

from __future__ import annotations

from .terms import Atom, BindingStore, Compound, Integer, Term, Var, deref


def unify(a: Term, b: Term, store: BindingStore, occurs_check: bool = True) -> bool:
    mark = store.checkpoint()
    work = [(a, b)]
    while work:
        x, y = work.pop()
        x = deref(x, store)
        y = deref(y, store)
        if isinstance(x, Var):
            if isinstance(y, Var):
                if x.id != y.id:
                    # Bind the younger (higher id) to the older: keeps stores
                    # deterministic and variable chains acyclic.
                    if x.id > y.id:
                        store.bind(x, y)
                    else:
                        store.bind(y, x)
                continue
            if occurs_check and occurs(x.id, y, store):
                store.undo_to(mark)
                return False
            store.bind(x, y)
            continue
        if isinstance(y, Var):
            if occurs_check and occurs(y.id, x, store):
                store.undo_to(mark)
                return False
            store.bind(y, x)
            continue
        if isinstance(x, Atom) and isinstance(y, Atom) and x.name == y.name:
            continue
        if isinstance(x, Integer) and isinstance(y, Integer) and x.value == y.value:
            continue
        if (isinstance(x, Compound) and isinstance(y, Compound)
                and x.functor == y.functor and len(x.args) == len(y.args)):
            work.extend(zip(x.args, y.args))
            continue
        store.undo_to(mark)
        return False
    return True


def occurs(var_id: int, term: Term, store: BindingStore) -> bool:
    """True iff the variable occurs anywhere in the dereferenced term."""
    stack = [term]
    while stack:
        t = deref(stack.pop(), store)
        if isinstance(t, Var):
            if t.id == var_id:
                return True
        elif isinstance(t, Compound):
            stack.extend(t.args)
    return False
