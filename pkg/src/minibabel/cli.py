"""Command-line front end: ``minibabel run|check|repl``.

Exit codes: 0 success, 1 I/O or usage error, 2 parse error, 3 illformed,
4 type error, 5 step budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from typing import TextIO

from .ast import Block, statement_kind
from .check import EMPTY_CHECK_ENV, check_block, check_program
from .errors import IllformedError, ParseError, RuntimeTypeError, StepLimitExceeded
from .interp import Evaluator, collapse_values
from .parse import parse_program
from .runtime import EMPTY_ENV, Store, lookup, render_value

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_ILLFORMED = 3
EXIT_TYPEERROR = 4
EXIT_STEPS = 5


def main(argv: list[str] | None = None) -> int:
    parser = _build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors.
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.steps is not None and args.steps <= 0:
        print("error: --steps must be a positive integer", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "run":
        return cmd_run(args)
    if args.command == "check":
        return cmd_check(args)
    return cmd_repl(args)


def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minibabel",
        description="Interpreter for Mini Babel-17, a purely functional "
        "structured language with linear scope.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="check and evaluate a program")
    run.add_argument("input", help="program file, or - for standard input")
    run.add_argument("--trace", action="store_true",
                     help="log every evaluated statement to standard error")
    run.add_argument("--steps", type=int, metavar="N", default=None,
                     help="abort after N statement evaluations")
    run.add_argument("--no-check", dest="check", action="store_false",
                     help="skip the static well-formedness check")

    check = sub.add_parser("check", help="statically check a program")
    check.add_argument("input", help="program file, or - for standard input")
    check.set_defaults(steps=None)

    repl = sub.add_parser("repl", help="interactive session")
    repl.add_argument("--trace", action="store_true",
                      help="log every evaluated statement to standard error")
    repl.add_argument("--steps", type=int, metavar="N", default=None,
                      help="abort an input after N statement evaluations")
    repl.add_argument("--no-check", dest="check", action="store_false",
                      help="skip the static check before each input")

    return parser


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _trace_fn(stream: TextIO):
    def trace(stmt, values):
        line = f"{stmt.pos.line}:{stmt.pos.col} {statement_kind(stmt)}"
        if values:
            line += " -> " + ", ".join(render_value(v) for v in values)
        print(line, file=stream)

    return trace


def _parse_input(args) -> Block | int:
    try:
        source = _read_source(args.input)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return parse_program(source)
    except ParseError as exc:
        print(exc.render(), file=sys.stderr)
        return EXIT_PARSE


def cmd_run(args) -> int:
    block = _parse_input(args)
    if isinstance(block, int):
        return block
    if args.check:
        report = check_program(block)
        if not report.wellformed:
            print(report.render(), file=sys.stderr)
            return EXIT_ILLFORMED
    evaluator = Evaluator(
        max_steps=args.steps,
        trace=_trace_fn(sys.stderr) if args.trace else None,
    )
    try:
        value = evaluator.run_program(block)
    except IllformedError as exc:
        print(exc.render(), file=sys.stderr)
        return EXIT_ILLFORMED
    except RuntimeTypeError as exc:
        print(exc.render(), file=sys.stderr)
        return EXIT_TYPEERROR
    except StepLimitExceeded as exc:
        print(exc.render(), file=sys.stderr)
        return EXIT_STEPS
    print(render_value(value))
    return EXIT_OK


def cmd_check(args) -> int:
    block = _parse_input(args)
    if isinstance(block, int):
        return block
    report = check_program(block)
    if not report.wellformed:
        print(report.render(), file=sys.stderr)
        return EXIT_ILLFORMED
    print("wellformed")
    return EXIT_OK


def cmd_repl(args) -> int:
    """One growing top-level block: each input's bindings persist, so an
    assignment may target a ``val`` from an earlier input."""
    env = EMPTY_ENV
    store = Store()
    check_env = EMPTY_CHECK_ENV
    interactive = sys.stdin.isatty()
    trace = _trace_fn(sys.stderr) if args.trace else None
    buffer: list[str] = []

    while True:
        if interactive:
            sys.stdout.write(">> " if not buffer else ".. ")
            sys.stdout.flush()
        line = sys.stdin.readline()
        if line == "":
            if buffer:
                _report_pending(buffer)
            return EXIT_OK
        line = line.rstrip("\n")

        if not buffer:
            stripped = line.strip()
            if stripped == "":
                continue
            if stripped == ":quit":
                return EXIT_OK
            if stripped == ":env":
                _print_bindings(env, store)
                continue
            if stripped.startswith(":"):
                print(f"unknown command {stripped!r}", file=sys.stderr)
                continue

        buffer.append(line)
        try:
            block = parse_program("\n".join(buffer))
        except ParseError as exc:
            if exc.at_eof:
                continue  # construct still open; keep reading
            print(exc.render(), file=sys.stderr)
            buffer.clear()
            continue
        buffer.clear()

        new_check_env = check_env
        if args.check:
            try:
                new_check_env = check_block(check_env, block)
            except IllformedError as exc:
                print(exc.render(), file=sys.stderr)
                continue

        backup = store.copy()
        evaluator = Evaluator(max_steps=args.steps, trace=trace)
        try:
            new_env, values = evaluator.eval_block(env, store, block)
        except (IllformedError, RuntimeTypeError, StepLimitExceeded) as exc:
            print(exc.render(), file=sys.stderr)
            store = backup  # roll back this input's effects
            continue
        env = new_env
        check_env = new_check_env
        if values:
            print(render_value(collapse_values(values)))


def _report_pending(buffer: list[str]) -> None:
    try:
        parse_program("\n".join(buffer))
    except ParseError as exc:
        print(exc.render(), file=sys.stderr)


def _print_bindings(env, store) -> None:
    names = sorted(set(env.nonlinear) | set(env.linear))
    for name in names:
        print(f"{name} = {render_value(lookup(env, store, name))}")


if __name__ == "__main__":
    sys.exit(main())
