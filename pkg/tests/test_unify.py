"""Unification: spec cases plus differential testing against Robinson MGU."""

import random

from scdprolog import (
    Atom,
    BindingStore,
    Compound,
    Integer,
    Var,
    parse_term,
    resolve,
    unify,
    variant,
)

from .mgu import apply_subst, robinson_mgu


def test_bind_variable_to_atom():
    store = BindingStore()
    x = Var(0)
    assert unify(x, Atom("london"), store)
    assert resolve(x, store) == Atom("london")


def test_flight_head_mismatch_leaves_store_unchanged():
    # The panam fact is for nice, not london: the goal must not match.
    store = BindingStore()
    d, a = Var(0, "D"), Var(1, "A")
    goal = Compound("panam", (Atom("paris"), Atom("london"), d, a))
    fact = parse_term("panam(paris,nice,9:40,10:50).")
    assert not unify(goal, fact, store)
    assert store.snapshot() == {}
    assert store.trail == []


def test_occurs_check_rejects_self_embedding():
    store = BindingStore()
    x = Var(0)
    assert not unify(x, Compound("f", (x,)), store, occurs_check=True)
    assert store.snapshot() == {}


def test_no_occurs_check_allows_self_embedding():
    store = BindingStore()
    x = Var(0)
    assert unify(x, Compound("f", (x,)), store, occurs_check=False)


def test_two_sided_binding():
    # Expected bindings confirmed by the Robinson oracle below.
    store = BindingStore()
    x, y = Var(0, "X"), Var(1, "Y")
    a = Compound("f", (x, Atom("b")))
    b = Compound("f", (Atom("a"), y))
    oracle = robinson_mgu(a, b)
    assert oracle is not None
    assert unify(a, b, store)
    assert resolve(x, store) == Atom("a")
    assert resolve(y, store) == Atom("b")
    assert variant(resolve(a, store), apply_subst(oracle, a))


def test_var_var_binds_younger_to_older():
    store = BindingStore()
    old, young = Var(0), Var(5)
    assert unify(young, old, store)
    assert store.snapshot() == {5: old}
    store2 = BindingStore()
    assert unify(old, young, store2)
    assert store2.snapshot() == {5: old}


def _random_term(rng, depth, var_pool):
    roll = rng.random()
    if roll < 0.30:
        return Var(rng.choice(var_pool))
    if roll < 0.55 or depth == 0:
        return Atom(rng.choice("abc"))
    if roll < 0.65:
        return Integer(rng.randrange(3))
    functor = rng.choice("fg")
    arity = rng.randint(1, 3)
    return Compound(functor, tuple(
        _random_term(rng, depth - 1, var_pool) for _ in range(arity)))


def _pairs(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        pool = list(range(rng.randint(1, 4)))
        yield (_random_term(rng, rng.randint(0, 4), pool),
               _random_term(rng, rng.randint(0, 4), pool))


def test_unify_agrees_with_robinson_oracle():
    """MGU differential on random term pairs, occurs check on."""
    unified = 0
    for a, b in _pairs(90125, 1000):
        store = BindingStore()
        ours = unify(a, b, store)
        oracle = robinson_mgu(a, b)
        assert ours == (oracle is not None), (a, b)
        if ours:
            unified += 1
            assert resolve(a, store) == resolve(b, store)
            assert variant(resolve(a, store), apply_subst(oracle, a)), (a, b)
    assert unified > 100  # sanity: the generator produces real positives


def test_unify_symmetry():
    for a, b in _pairs(777, 400):
        left_store, right_store = BindingStore(), BindingStore()
        left = unify(a, b, left_store)
        right = unify(b, a, right_store)
        assert left == right
        if left:
            assert variant(resolve(a, left_store), resolve(a, right_store))


def test_failure_purity():
    for a, b in _pairs(31337, 400):
        store = BindingStore()
        store.bind(Var(100), Atom("preexisting"))
        before = store.snapshot()
        if not unify(a, b, store):
            assert store.snapshot() == before


def test_solved_form_idempotent():
    """Re-unifying the resolved terms adds zero new bindings."""
    for a, b in _pairs(2468, 400):
        store = BindingStore()
        if unify(a, b, store):
            ra, rb = resolve(a, store), resolve(b, store)
            mark = store.checkpoint()
            assert unify(ra, rb, store)
            assert store.checkpoint() == mark


def test_disequality_spec_case():
    # X \= f(X) holds under the occurs check; oracle concurs.
    x = Var(0)
    assert robinson_mgu(x, Compound("f", (x,))) is None
