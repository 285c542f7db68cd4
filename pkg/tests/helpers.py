"""Shared test utilities: one-call solving plus random instance generation."""

from __future__ import annotations

import random

from scdprolog import parse_program, parse_query, solve
from scdprolog.gen import GenConfig, query_scope, random_goal, random_program
from scdprolog.oracle import oracle_solve
from scdprolog.solver import Engine

# High enough that it only trips on a solver bug (the paired oracle run
# proves the search tree finite); keeps a broken build from hanging CI.
SAFETY_DEPTH = 1_000_000

CORPUS = "corpus"


def engine_for(program_text: str, query_text: str, **flags) -> Engine:
    return solve(parse_program(program_text), parse_query(query_text), **flags)


def solutions(program_text: str, query_text: str, **flags) -> list[dict]:
    return [s.bindings for s in engine_for(program_text, query_text, **flags)]


def stream_bindings(engine) -> list[dict]:
    return [s.bindings for s in engine]


def gen_goal_pair(rng: random.Random, config: GenConfig = GenConfig()):
    """(program, G0, G1) with the two goals sharing one variable scope."""
    program, sigs = random_program(rng, config)
    scope = query_scope()
    g0 = random_goal(rng, sigs, config, scope=scope)
    g1 = random_goal(rng, sigs, config, scope=scope)
    return program, g0, g1


def oracle_list(program, goal, depth_bound: int = 200):
    """Full oracle enumeration, or None when the bound/budget tripped."""
    result = oracle_solve(program, goal, depth_bound)
    return None if result.exhausted else list(result.solutions)
