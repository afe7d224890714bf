"""Static well-formedness checker.

An abstract traversal of the program that tracks only binding *shape*
(which identifiers are bound, and which of those are linear), mirroring
the evaluator's environment discipline exactly: ``val`` binds linearly,
nested blocks and branches discard their bindings, simple-expressions and
closure bodies are checked under a frozen environment.

A program that checks well-formed can never raise ``Illformed`` during
evaluation: the checker resolves a superset of the identifier occurrences
any run resolves, and validates every assignment target against the same
linear-scope shape the evaluator will see.  The converse does not hold;
for example an assignment in a branch that is never taken is still
rejected.  The traversal is structural recursion (loop bodies are checked
once), so it terminates on every input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .ast import (
    App,
    Assign,
    BinOp,
    Block,
    BlockStmt,
    BoolLit,
    Expr,
    For,
    If,
    IntLit,
    Lambda,
    ListLit,
    Name,
    Neg,
    SIMPLE_EXPR_TYPES,
    SimpleExpr,
    Statement,
    Val,
    While,
    Yield,
)
from .errors import IllformedError, Pos

LookupFn = Callable[[str, Pos], None]


@dataclass(frozen=True)
class CheckEnv:
    """Binding-shape environment: names only, same split as the evaluator's."""

    nonlinear: frozenset[str]
    linear: frozenset[str]


EMPTY_CHECK_ENV = CheckEnv(frozenset(), frozenset())


def _freeze(env: CheckEnv) -> CheckEnv:
    if not env.linear:
        return env
    return CheckEnv(env.nonlinear | env.linear, frozenset())


def _bind(env: CheckEnv, name: str) -> CheckEnv:
    return CheckEnv(env.nonlinear - {name}, env.linear | {name})


@dataclass(frozen=True)
class CheckReport:
    """Verdict of a whole-program check."""

    wellformed: bool
    message: str | None = None
    pos: Pos | None = None

    def render(self) -> str:
        if self.wellformed:
            return "wellformed"
        return IllformedError(self.message or "", self.pos).render()


def check_program(block: Block, *, on_lookup: LookupFn | None = None) -> CheckReport:
    """Check a whole program against an empty environment."""
    try:
        check_block(EMPTY_CHECK_ENV, block, on_lookup=on_lookup)
    except IllformedError as err:
        return CheckReport(False, err.message, err.pos)
    return CheckReport(True)


def check_block(
    env: CheckEnv, block: Block, *, on_lookup: LookupFn | None = None
) -> CheckEnv:
    """Check a block under ``env``, returning the extended environment.

    Raises :class:`IllformedError` at the first violation.  This is the
    incremental entry point the REPL uses to carry scope across inputs.
    """
    return _Checker(on_lookup).block(env, block)


class _Checker:
    def __init__(self, on_lookup: LookupFn | None):
        self.on_lookup = on_lookup

    def block(self, env: CheckEnv, block: Block) -> CheckEnv:
        for stmt in block.statements:
            env = self.statement(env, stmt)
        return env

    def statement(self, env: CheckEnv, stmt: Statement) -> CheckEnv:
        match stmt:
            case Val(target=target, rhs=rhs):
                self.expr(env, rhs)
                return _bind(env, target)
            case Assign(target=target, rhs=rhs):
                self.expr(env, rhs)
                if target not in env.linear:
                    raise IllformedError(
                        f"cannot assign to '{target}': it is not in linear scope",
                        stmt.pos,
                    )
                return env
            case Yield(value=operand):
                self.expr(env, operand)
                return env
            case BlockStmt(body=body):
                self.block(env, body)
                return env
            case If(cond=cond, then=then, orelse=orelse):
                self.simple_expr(env, cond)
                self.block(env, then)
                self.block(env, orelse)
                return env
            case While(cond=cond, body=body):
                self.simple_expr(env, cond)
                self.block(env, body)
                return env
            case For(binder=binder, source=source, body=body):
                self.simple_expr(env, source)
                self.block(_bind(env, binder), body)
                return env
            case _:
                raise AssertionError(f"unhandled statement {stmt!r}")

    def expr(self, env: CheckEnv, expr: Expr) -> None:
        if isinstance(expr, SIMPLE_EXPR_TYPES):
            self.simple_expr(env, expr)
        else:
            self.statement(env, expr)

    def simple_expr(self, env: CheckEnv, se: SimpleExpr) -> None:
        self.simple(_freeze(env), se)

    def simple(self, env: CheckEnv, se: SimpleExpr) -> None:
        match se:
            case IntLit() | BoolLit():
                pass
            case Name(ident=ident):
                if ident not in env.nonlinear:
                    raise IllformedError(f"unbound identifier '{ident}'", se.pos)
                if self.on_lookup is not None:
                    self.on_lookup(ident, se.pos)
            case Lambda(param=param, body=body):
                self.expr(_bind(env, param), body)
            case App(fn=fn, arg=arg):
                self.expr(env, fn)
                self.expr(env, arg)
            case BinOp(lhs=lhs, rhs=rhs):
                self.expr(env, lhs)
                self.expr(env, rhs)
            case ListLit(elements=elements):
                for element in elements:
                    self.expr(env, element)
            case Neg(operand=operand):
                self.expr(env, operand)
            case _:
                raise AssertionError(f"unhandled simple-expression {se!r}")
