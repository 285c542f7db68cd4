"""Tokenizer and parser: grammar, precedence, positions, round-trips."""

import random

import pytest

from scdprolog import (
    Atom,
    AtomicGoal,
    BadClauseHead,
    Compound,
    Conj,
    Integer,
    LexError,
    ParseError,
    Scd,
    Var,
    format_clause,
    parse_program,
    parse_query,
    parse_term,
    variant,
)
from scdprolog.gen import random_program
from scdprolog.parser import tokenize
from scdprolog.terms import clause_to_term


def kinds(source):
    return [(t.kind, t.text) for t in tokenize(source)]


def test_tokenize_simple_clause():
    assert kinds("p(X).") == [
        ("ATOM", "p"), ("PUNCT", "("), ("VARIABLE", "X"), ("PUNCT", ")"),
        ("END", "."),
    ]


def test_tokenize_clock_value():
    assert kinds("9:40") == [("INTEGER", "9"), ("PUNCT", ":"), ("INTEGER", "40")]


def test_tokenize_comment_skipped():
    assert kinds("% c\na.") == [("ATOM", "a"), ("END", ".")]


def test_tokenize_double_semicolon_maximal_munch():
    assert kinds("a ;; b ; c") == [
        ("ATOM", "a"), ("PUNCT", ";;"), ("ATOM", "b"), ("PUNCT", ";"), ("ATOM", "c"),
    ]


def test_tokenize_quoted_atom_with_escape():
    assert kinds(r"'a\'b'") == [("ATOM", "a'b")]


def test_tokenize_rejects_illegal_character():
    with pytest.raises(LexError):
        tokenize("p(#).")


def test_tokenize_rejects_unterminated_quote():
    with pytest.raises(LexError) as info:
        tokenize("'oops")
    assert "unterminated" in str(info.value)


def test_tokenize_rejects_inner_dot():
    with pytest.raises(LexError):
        tokenize("a.b")


def test_lex_error_position():
    with pytest.raises(LexError) as info:
        tokenize("ok.\n  #")
    assert info.value.position == (2, 3)


def test_parse_scd_body():
    program = parse_program("sort(X,Y) :- heapsort(X,Y) ;; quicksort(X,Y).")
    clause = program.clauses[0]
    assert clause.head.functor == "sort"
    assert isinstance(clause.body, Scd)
    assert clause.body.first.term.functor == "heapsort"
    assert clause.body.second.term.functor == "quicksort"


def test_parse_flight_fact_with_leading_zero():
    program = parse_program("panam(paris, nice, 9:40, 10:50).\n"
                            "delta(paris, london, 9:24, 09:50).")
    delta = program.clauses[1]
    assert delta.head.args[3] == Compound(":", (Integer(9), Integer(50)))


def test_comma_binds_tighter_than_scd():
    clause = parse_program("p :- q, r ;; s.").clauses[0]
    assert isinstance(clause.body, Scd)
    assert isinstance(clause.body.first, Conj)
    assert clause.body.second == AtomicGoal(Atom("s"))


def test_scd_right_associative():
    goal = parse_query("a ;; b ;; c.")
    assert isinstance(goal, Scd)
    assert goal.first == AtomicGoal(Atom("a"))
    assert isinstance(goal.second, Scd)


def test_query_optional_prompt_prefix():
    assert parse_query("?- true.") == AtomicGoal(Atom("true"))


def test_query_flight_disjunction():
    goal = parse_query("panam(paris,london,D,A) ;; delta(paris,london,D,A).")
    assert isinstance(goal, Scd)
    assert goal.first.term.functor == "panam"
    assert goal.second.term.functor == "delta"
    # D and A are shared between the disjuncts
    assert goal.first.term.args[2] == goal.second.term.args[2]


def test_program_index_in_textual_order():
    program = parse_program("p(1). q. p(2).")
    assert [c.head.args[0].value for c in program.lookup("p", 1)] == [1, 2]
    assert len(program.lookup("q", 0)) == 1
    assert program.lookup("nope", 3) == ()


def test_bad_clause_head_variable():
    with pytest.raises(BadClauseHead):
        parse_program("X.")


def test_bad_clause_head_integer():
    with pytest.raises(BadClauseHead):
        parse_program("42 :- true.")


def test_bad_clause_head_control_functor():
    with pytest.raises(BadClauseHead):
        parse_program("(a , b).")


def test_variable_goal_rejected():
    with pytest.raises(ParseError):
        parse_query("X.")


def test_parse_error_reports_position_and_token():
    with pytest.raises(ParseError) as info:
        parse_program("p(a b).")
    assert info.value.position == (1, 5)
    assert info.value.found == "b"


@pytest.mark.parametrize("source", [
    "p(.",
    "p :- .",
    "p",           # missing terminator
    "p :- q ;; .",
    "f(a,).",
    "[1,2.",
    "a = b = c.",  # xfx chains don't associate
])
def test_malformed_inputs_raise_parse_error(source):
    with pytest.raises(ParseError):
        parse_program(source)


def test_nonassoc_xfx_needs_parens():
    term = parse_term("a = (b = c).")
    assert term.functor == "="
    assert term.args[1].functor == "="


def test_anonymous_variable_fresh_per_occurrence():
    clause = parse_program("p(_, _).").clauses[0]
    left, right = clause.head.args
    assert isinstance(left, Var) and isinstance(right, Var)
    assert left.id != right.id
    assert left.hint is None


def test_named_variables_shared_within_clause_only():
    program = parse_program("p(X) :- q(X).\nr(X).")
    first, second = program.clauses
    assert first.head.args[0].id == first.body.term.args[0].id
    assert first.head.args[0].id != second.head.args[0].id


def test_functor_requires_adjacent_paren():
    # With a space, `(` cannot start an argument list.
    with pytest.raises(ParseError):
        parse_program("f (a).")


def test_negative_integer_literal_in_operand_position():
    assert parse_term("f(-3).") == Compound("f", (Integer(-3),))
    minus = parse_term("2 - 3.")
    assert minus == Compound("-", (Integer(2), Integer(3)))


def test_list_with_tail():
    term = parse_term("[X|Xs].")
    assert term.functor == "."
    assert isinstance(term.args[1], Var)


def test_empty_list_is_nil_atom():
    assert parse_term("[].") == Atom("[]")


def test_translated_grammar_extensions_parse():
    program = parse_program(
        "sort(X,Y) :- ( heapsort(X,Y) *-> true ; quicksort(X,Y) ).")
    body = program.clauses[0].body
    assert isinstance(body, AtomicGoal)
    assert body.term.functor == ";"
    assert body.term.args[0].functor == "*->"


def test_parse_print_identity_random_programs():
    """parse(print(P)) == P up to renaming, on generator output."""
    rng = random.Random(7041)
    for _ in range(500):
        program, _sigs = random_program(rng)
        text = "\n".join(format_clause(c) for c in program.clauses)
        reparsed = parse_program(text)
        assert len(reparsed.clauses) == len(program.clauses)
        for mine, theirs in zip(program.clauses, reparsed.clauses):
            assert variant(clause_to_term(mine), clause_to_term(theirs))
