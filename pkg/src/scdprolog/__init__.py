"""Horn-clause logic engine with sequential-choice disjunction (`;;`).

`G0 ;; G1` tries G0 and commits to it on its first success (G0's own
alternatives survive; the G1 fallback is discarded); only if G0 fails
finitely is G1 run instead. The rest of the language is plain Prolog-style
Horn clauses with a small builtin vocabulary.
"""

from .errors import (
    BadClauseHead,
    BuiltinTypeError,
    CyclicTerm,
    DepthLimitExceeded,
    InstantiationError,
    LexError,
    ParseError,
    Position,
    ScdPrologError,
    UnknownPredicate,
)
from .oracle import OracleResult, canonical_solution, oracle_solve, same_solutions
from .parser import parse_program, parse_query, parse_term, tokenize
from .solver import (
    Engine,
    Solution,
    solve,
    translate_goal,
    translate_to_std,
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
    deref,
    format_clause,
    format_term,
    make_list,
    make_program,
    print_term,
    rename_fresh,
    resolve,
    variant,
)
from .unify import unify

__version__ = "0.1.0"
