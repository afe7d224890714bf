"""Soundness fuzzing.

For every generated program that the checker accepts, evaluation must not
raise ``Illformed``; a type error, a step-budget stop, or (for degenerate
self-applications) a recursion stop all count as "no verdict" rather than
violations.  Each accepted program is also evaluated twice to confirm
determinism, with store-purity instrumentation enabled.

Reported counterexamples are shrunk to local minimality: removing any
single statement makes the failure disappear.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Iterator

from ..ast import (
    App,
    Assign,
    BinOp,
    Block,
    BlockStmt,
    Expr,
    For,
    If,
    Lambda,
    ListLit,
    Neg,
    Statement,
    Val,
    While,
    Yield,
)
from ..check import check_program
from ..errors import IllformedError, RuntimeTypeError, StepLimitExceeded
from ..interp import Evaluator, call
from ..pretty import format_program
from ..runtime import VBool, VFun, VInt, VList, Value, render_value
from .generate import GeneratorConfig, generate_program

DEFAULT_STEP_BUDGET = 3000
_PROBE_ARGS = (VInt(0), VInt(1), VInt(2))


@dataclass(frozen=True)
class FuzzViolation:
    seed: int
    kind: str  # "soundness" | "determinism" | "purity"
    source: str
    detail: str


@dataclass(frozen=True)
class FuzzReport:
    iterations: int
    wellformed: int
    illformed_verdicts: int
    no_verdict: int
    violations: tuple[FuzzViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def run_soundness_fuzz(
    config: GeneratorConfig,
    iterations: int,
    *,
    step_budget: int = DEFAULT_STEP_BUDGET,
    check_purity: bool = True,
) -> FuzzReport:
    wellformed = 0
    illformed_verdicts = 0
    no_verdict = 0
    violations: list[FuzzViolation] = []

    for offset in range(iterations):
        cfg = replace(config, seed=config.seed + offset)
        program = generate_program(cfg)
        if not check_program(program).wellformed:
            illformed_verdicts += 1
            continue
        wellformed += 1

        kind1, detail1 = _guarded_eval(program, step_budget, check_purity)
        if kind1 == "illformed":
            minimal = shrink_block(
                program, lambda blk: _is_soundness_failure(blk, step_budget)
            )
            violations.append(
                FuzzViolation(cfg.seed, "soundness", format_program(minimal), detail1)
            )
            continue
        if kind1 == "purity":
            violations.append(
                FuzzViolation(cfg.seed, "purity", format_program(program), detail1)
            )
            continue
        if kind1 == "noverdict":
            no_verdict += 1
            continue

        kind2, detail2 = _guarded_eval(program, step_budget, False)
        if (kind1, detail1) != (kind2, detail2):
            violations.append(
                FuzzViolation(
                    cfg.seed,
                    "determinism",
                    format_program(program),
                    f"first run {kind1}:{detail1!r}, second run {kind2}:{detail2!r}",
                )
            )

    return FuzzReport(
        iterations, wellformed, illformed_verdicts, no_verdict, tuple(violations)
    )


def _guarded_eval(
    program: Block, step_budget: int, check_purity: bool
) -> tuple[str, str]:
    """Evaluate under a budget.  Returns (kind, detail) where kind is one of
    ``ok``, ``typeerror``, ``illformed``, ``purity``, ``noverdict``."""
    evaluator = Evaluator(max_steps=step_budget, check_purity=check_purity)
    try:
        value = evaluator.run_program(program)
    except IllformedError as exc:
        return "illformed", exc.render()
    except RuntimeTypeError as exc:
        return "typeerror", exc.render()
    except (StepLimitExceeded, RecursionError):
        return "noverdict", ""
    except AssertionError as exc:
        return "purity", str(exc)
    return "ok", describe_value(value)


def describe_value(value: Value, depth: int = 0) -> str:
    """Deterministic description; closures are described by their results
    on a fixed probe set, since they have no canonical rendering."""
    if isinstance(value, VFun):
        if depth >= 2:
            return "<fun ...>"
        results = []
        for probe in _PROBE_ARGS:
            try:
                out = call(value, probe, max_steps=DEFAULT_STEP_BUDGET)
            except (IllformedError, RuntimeTypeError) as exc:
                results.append(exc.label)
            except (StepLimitExceeded, RecursionError):
                results.append("noverdict")
            else:
                results.append(describe_value(out, depth + 1))
        return "<fun " + " ".join(results) + ">"
    if isinstance(value, VList):
        return "[" + ", ".join(describe_value(v, depth) for v in value.items) + "]"
    return render_value(value)


def _is_soundness_failure(block: Block, step_budget: int) -> bool:
    if not check_program(block).wellformed:
        return False
    return _guarded_eval(block, step_budget, False)[0] == "illformed"


# --- shrinking ----------------------------------------------------------------


def shrink_block(block: Block, still_fails: Callable[[Block], bool]) -> Block:
    """Greedily remove statements while the failure persists.  The result is
    locally minimal: removing any one further statement makes it pass."""
    current = block
    progress = True
    while progress:
        progress = False
        for candidate in iter_statement_removals(current):
            if still_fails(candidate):
                current = candidate
                progress = True
                break
    return current


def iter_statement_removals(block: Block) -> Iterator[Block]:
    """Yield every variant of ``block`` with exactly one statement removed,
    at any nesting depth (including statements inside expression position)."""
    statements = block.statements
    for i in range(len(statements)):
        yield Block(statements[:i] + statements[i + 1:], block.pos)
    for i, stmt in enumerate(statements):
        for variant in _statement_removals(stmt):
            yield Block(statements[:i] + (variant,) + statements[i + 1:], block.pos)


def _statement_removals(stmt: Statement) -> Iterator[Statement]:
    match stmt:
        case Val() | Assign():
            for rhs in _expr_removals(stmt.rhs):
                yield replace(stmt, rhs=rhs)
        case Yield():
            for value in _expr_removals(stmt.value):
                yield replace(stmt, value=value)
        case BlockStmt():
            for body in iter_statement_removals(stmt.body):
                yield replace(stmt, body=body)
        case If():
            for cond in _expr_removals(stmt.cond):
                yield replace(stmt, cond=cond)
            for then in iter_statement_removals(stmt.then):
                yield replace(stmt, then=then)
            for orelse in iter_statement_removals(stmt.orelse):
                yield replace(stmt, orelse=orelse)
        case While():
            for cond in _expr_removals(stmt.cond):
                yield replace(stmt, cond=cond)
            for body in iter_statement_removals(stmt.body):
                yield replace(stmt, body=body)
        case For():
            for source in _expr_removals(stmt.source):
                yield replace(stmt, source=source)
            for body in iter_statement_removals(stmt.body):
                yield replace(stmt, body=body)


def _expr_removals(expr: Expr) -> Iterator[Expr]:
    match expr:
        case Lambda():
            for body in _expr_removals(expr.body):
                yield replace(expr, body=body)
        case App():
            for fn in _expr_removals(expr.fn):
                yield replace(expr, fn=fn)
            for arg in _expr_removals(expr.arg):
                yield replace(expr, arg=arg)
        case BinOp():
            for lhs in _expr_removals(expr.lhs):
                yield replace(expr, lhs=lhs)
            for rhs in _expr_removals(expr.rhs):
                yield replace(expr, rhs=rhs)
        case ListLit():
            for i, element in enumerate(expr.elements):
                for variant in _expr_removals(element):
                    yield replace(
                        expr,
                        elements=expr.elements[:i] + (variant,) + expr.elements[i + 1:],
                    )
        case Neg():
            for operand in _expr_removals(expr.operand):
                yield replace(expr, operand=operand)
        case If() | While() | For() | BlockStmt():
            yield from _statement_removals(expr)
