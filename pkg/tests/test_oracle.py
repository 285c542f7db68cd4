"""The reference evaluator itself: exact lists, exhaustion, totality."""

import random

from scdprolog import Integer, parse_program, parse_query
from scdprolog.gen import random_program, random_goal, query_scope
from scdprolog.oracle import canonical_solution, oracle_solve, same_solutions


def test_first_success_by_definition():
    program = parse_program("p(1). p(2). q(3).")
    result = oracle_solve(program, parse_query("p(X) ;; q(X)."), 10)
    assert not result.exhausted
    assert [s["X"] for s in result.solutions] == [Integer(1), Integer(2)]


def test_true_yields_one_empty_solution():
    result = oracle_solve(parse_program("x."), parse_query("true."), 10)
    assert result.solutions == ({},)


def test_left_recursion_exhausts_bound():
    result = oracle_solve(parse_program("p :- p."), parse_query("p."), 10)
    assert result.exhausted
    assert result.solutions == ()


def test_exhaustion_in_any_branch_poisons_the_result():
    # q(1) would be a fine answer, but the diverging p branch means the
    # oracle cannot claim a complete enumeration.
    program = parse_program("p :- p. q(1).")
    result = oracle_solve(program, parse_query("p ;; q(X)."), 10)
    assert result.exhausted


def test_step_budget_reports_exhaustion():
    program = parse_program("p. p. p :- p, p.")
    result = oracle_solve(program, parse_query("p, p, p."), 200, step_budget=50)
    assert result.exhausted


def test_totality_on_random_instances():
    rng = random.Random(5150)
    for _ in range(200):
        program, sigs = random_program(rng)
        goal = random_goal(rng, sigs, scope=query_scope(), allow_scd=True)
        oracle_solve(program, goal, 50, step_budget=20_000)  # must terminate


def test_canonical_solution_renames_consistently():
    from scdprolog import Var
    one = {"X": Var(3), "Y": Var(3)}
    two = {"X": Var(8), "Y": Var(8)}
    three = {"X": Var(1), "Y": Var(2)}
    assert canonical_solution(one) == canonical_solution(two)
    assert canonical_solution(one) != canonical_solution(three)


def test_same_solutions_respects_order_and_multiplicity():
    a = [{"X": Integer(1)}, {"X": Integer(2)}]
    b = [{"X": Integer(2)}, {"X": Integer(1)}]
    assert same_solutions(a, list(a))
    assert not same_solutions(a, b)
    assert not same_solutions(a, a + a)
