"""Command-line front end: run queries in batch, interactively, or translate.

    scdprolog run FILES -q QUERY [-n MAX] [--depth-limit N]
                  [--no-occurs-check] [--strict-unknown]
    scdprolog repl [FILES] [flags]
    scdprolog translate FILES -o OUT.pl [--no-occurs-check]

Exit status: 0 with at least one answer, 1 with none, 2 on any error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional

from .errors import ScdPrologError
from .parser import parse_program, parse_query
from .solver import Engine, Solution, solve, translate_to_std
from .terms import Program, format_term, make_program


@dataclass
class SessionConfig:
    files: list = field(default_factory=list)
    occurs_check: bool = True
    strict_unknown: bool = False
    depth_limit: Optional[int] = None
    max_solutions: Optional[int] = None


def load_program(files) -> Program:
    """Consult files in order; later clauses for a predicate append after earlier."""
    clauses = []
    for path in files:
        with open(path, encoding="utf-8") as handle:
            clauses.extend(parse_program(handle.read()).clauses)
    return make_program(clauses)


def _prepare_query(text: str) -> str:
    text = text.strip()
    return text if text.endswith(".") else text + "."


def format_solution(solution: Solution) -> str:
    return ", ".join(f"{name} = {format_term(t)}"
                     for name, t in solution.bindings.items())


def _engine(config: SessionConfig, program: Program, query_text: str) -> Engine:
    goal = parse_query(_prepare_query(query_text))
    return solve(program, goal,
                 occurs_check=config.occurs_check,
                 strict_unknown=config.strict_unknown,
                 depth_limit=config.depth_limit)


def cmd_run(config: SessionConfig, query_text: str, out=None) -> int:
    out = out or sys.stdout
    program = load_program(config.files)
    count = 0
    for solution in _engine(config, program, query_text):
        if count:
            print(";", file=out)
        line = format_solution(solution)
        if line:
            print(line, file=out)
        count += 1
        if config.max_solutions is not None and count >= config.max_solutions:
            break
    print("true." if count else "false.", file=out)
    return 0 if count else 1


def cmd_repl(config: SessionConfig, stdin=None, out=None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    program = load_program(config.files)
    interactive = stdin.isatty()

    def read_line(prompt: str) -> Optional[str]:
        if interactive:
            out.write(prompt)
            out.flush()
        line = stdin.readline()
        return None if line == "" else line.rstrip("\n")

    while True:
        line = read_line("?- ")
        if line is None:
            return 0
        line = line.strip()
        if not line:
            continue
        if line in ("halt.", "halt"):
            return 0
        try:
            _repl_answers(_engine(config, program, line), read_line, out)
        except ScdPrologError as err:
            print(err, file=sys.stderr)


def _repl_answers(engine: Engine, read_line, out) -> None:
    current = next(engine, None)
    if current is None:
        print("false.", file=out)
        return
    while True:
        upcoming = next(engine, None)
        text = format_solution(current) or "true"
        if upcoming is None:
            print(f"{text}.", file=out)
            return
        out.write(f"{text} ")
        out.flush()
        answer = read_line("")
        if answer is None or answer.strip() != ";":
            out.write("\n")
            return
        out.write(";\n")
        current = upcoming


def cmd_translate(config: SessionConfig, out_path: str) -> int:
    program = load_program(config.files)
    text = translate_to_std(program, occurs_check=config.occurs_check)
    with open(out_path, "w", encoding="utf-8") as handle:
        handle.write(text)
    return 0


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("files", nargs="*", metavar="FILE", help="program files (.scd)")
    sub.add_argument("--depth-limit", type=int, default=None, metavar="N",
                     help="abort after N backchaining steps")
    sub.add_argument("--no-occurs-check", action="store_true",
                     help="disable the occurs check in unification")
    sub.add_argument("--strict-unknown", action="store_true",
                     help="error on calls to undefined predicates instead of failing")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scdprolog")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one query in batch mode")
    _add_common_flags(run)
    run.add_argument("-q", "--query", required=True, help="goal to solve")
    run.add_argument("-n", "--max-solutions", type=int, default=None, metavar="MAX",
                     help="stop after MAX answers")

    repl = commands.add_parser("repl", help="interactive query loop")
    _add_common_flags(repl)

    translate = commands.add_parser("translate",
                                    help="emit a standard-Prolog (soft-cut) translation")
    translate.add_argument("files", nargs="+", metavar="FILE")
    translate.add_argument("-o", "--output", required=True, metavar="OUT.pl")
    translate.add_argument("--no-occurs-check", action="store_true")
    return parser


def _config_from(args: argparse.Namespace) -> SessionConfig:
    return SessionConfig(
        files=list(args.files),
        occurs_check=not args.no_occurs_check,
        strict_unknown=getattr(args, "strict_unknown", False),
        depth_limit=getattr(args, "depth_limit", None),
        max_solutions=getattr(args, "max_solutions", None),
    )


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    config = _config_from(args)
    try:
        if args.command == "run":
            return cmd_run(config, args.query)
        if args.command == "repl":
            return cmd_repl(config)
        return cmd_translate(config, args.output)
    except (ScdPrologError, OSError) as err:
        print(err, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
