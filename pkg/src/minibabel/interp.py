"""Tree-walking evaluator.

Blocks and statements thread an environment and store left to right and
yield *sequences* of values; a statement used as an expression evaluates
to its single yielded value, or to the list of its yielded values when
there are zero or several.  Simple-expressions always run under a frozen
environment, so evaluating one can allocate and write fresh locations but
can never write a location that existed before it began.

Nested blocks (``begin``, branches, loop bodies) restore the incoming
environment when they finish: their ``val`` bindings do not escape, while
rebindings of shared locations do, via the store.
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
    Op,
    SIMPLE_EXPR_TYPES,
    SimpleExpr,
    Statement,
    Val,
    While,
    Yield,
)
from .errors import (
    IllformedError,
    LangError,
    Pos,
    RuntimeTypeError,
    StepLimitExceeded,
)
from .runtime import (
    EMPTY_ENV,
    Env,
    Store,
    VBool,
    VFun,
    VInt,
    VList,
    Value,
    bind,
    freeze,
    lookup,
    rebind,
    type_name,
    values_equal,
)

TraceFn = Callable[[Statement, "list[Value]"], None]
LookupFn = Callable[[str, Pos], None]

_ARITH_OPS = frozenset({Op.MUL, Op.ADD, Op.SUB})
_ORDER_OPS = frozenset({Op.LT, Op.LE, Op.GT, Op.GE})


@dataclass(frozen=True)
class Outcome:
    """Result of a whole-program evaluation: a value, or a caught error."""

    value: Value | None = None
    error: LangError | None = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def error_kind(self) -> str | None:
        """``"illformed"`` or ``"typeerror"`` when an error was caught."""
        return None if self.error is None else self.error.label


def collapse_values(values: list[Value]) -> Value:
    """A single yielded value stays bare; zero or several become a list."""
    if len(values) == 1:
        return values[0]
    return VList(tuple(values))


def apply_binop(op: Op, lhs: Value, rhs: Value, pos: Pos | None = None) -> Value:
    """Apply a binary operator; raises the type error for any operand
    combination outside the operator tables."""
    if op in _ARITH_OPS:
        if isinstance(lhs, VInt) and isinstance(rhs, VInt):
            if op is Op.MUL:
                return VInt(lhs.value * rhs.value)
            if op is Op.ADD:
                return VInt(lhs.value + rhs.value)
            return VInt(lhs.value - rhs.value)
        raise RuntimeTypeError(
            f"'{op.symbol}' requires integers, got {type_name(lhs)} and {type_name(rhs)}",
            pos,
        )
    if op in _ORDER_OPS:
        if isinstance(lhs, VInt) and isinstance(rhs, VInt):
            a, b = lhs.value, rhs.value
            result = {
                Op.LT: a < b, Op.LE: a <= b, Op.GT: a > b, Op.GE: a >= b,
            }[op]
            return VBool(result)
        raise RuntimeTypeError(
            f"'{op.symbol}' requires integers, got {type_name(lhs)} and {type_name(rhs)}",
            pos,
        )
    equal = values_equal(lhs, rhs, pos)
    return VBool(equal if op is Op.EQ else not equal)


class Evaluator:
    """One program evaluation.

    ``max_steps`` bounds the number of statement evaluations (the library
    imposes no limit by default).  ``trace`` is called after every statement
    with the values it yielded.  ``on_lookup`` is called for every resolved
    identifier occurrence.  ``check_purity`` verifies after every
    simple-expression that no pre-existing store location changed.
    """

    def __init__(
        self,
        *,
        max_steps: int | None = None,
        trace: TraceFn | None = None,
        on_lookup: LookupFn | None = None,
        check_purity: bool = False,
    ):
        self.max_steps = max_steps
        self.trace = trace
        self.on_lookup = on_lookup
        self.check_purity = check_purity
        self.steps = 0

    def _tick(self, pos: Pos) -> None:
        self.steps += 1
        if self.max_steps is not None and self.steps > self.max_steps:
            raise StepLimitExceeded(
                f"statement budget of {self.max_steps} exhausted", pos
            )

    # --- program -----------------------------------------------------------

    def run_program(self, block: Block) -> Value:
        """Evaluate a program block over an empty environment and store."""
        _, values = self.eval_block(EMPTY_ENV, Store(), block)
        return collapse_values(values)

    # --- blocks and statements ----------------------------------------------

    def eval_block(
        self, env: Env, store: Store, block: Block
    ) -> tuple[Env, list[Value]]:
        values: list[Value] = []
        for stmt in block.statements:
            env, yielded = self.eval_statement(env, store, stmt)
            values.extend(yielded)
        return env, values

    def eval_nested_block(self, env: Env, store: Store, block: Block) -> list[Value]:
        """Evaluate a nested block: bindings are discarded, store updates kept."""
        _, values = self.eval_block(env, store, block)
        return values

    def eval_statement(
        self, env: Env, store: Store, stmt: Statement
    ) -> tuple[Env, list[Value]]:
        self._tick(stmt.pos)
        values: list[Value]
        match stmt:
            case Val(target=target, rhs=rhs):
                value = self.eval_expr(env, store, rhs)
                env = bind(env, store, target, value)
                values = []
            case Assign(target=target, rhs=rhs):
                value = self.eval_expr(env, store, rhs)
                rebind(env, store, target, value, stmt.pos)
                values = []
            case Yield(value=operand):
                values = [self.eval_expr(env, store, operand)]
            case BlockStmt(body=body):
                values = self.eval_nested_block(env, store, body)
            case If(cond=cond, then=then, orelse=orelse):
                test = self.eval_simple_expr(env, store, cond)
                if not isinstance(test, VBool):
                    raise RuntimeTypeError(
                        f"the condition of an if must be a boolean, got {type_name(test)}",
                        cond.pos,
                    )
                values = self.eval_nested_block(env, store, then if test.value else orelse)
            case While(cond=cond, body=body):
                values = []
                while True:
                    test = self.eval_simple_expr(env, store, cond)
                    if not isinstance(test, VBool):
                        raise RuntimeTypeError(
                            f"the condition of a while must be a boolean, got {type_name(test)}",
                            cond.pos,
                        )
                    if not test.value:
                        break
                    values.extend(self.eval_nested_block(env, store, body))
                    # Each new pass over the loop counts as a statement step.
                    self._tick(stmt.pos)
            case For(binder=binder, source=source, body=body):
                src = self.eval_simple_expr(env, store, source)
                if not isinstance(src, VList):
                    raise RuntimeTypeError(
                        f"the source of a for must be a list, got {type_name(src)}",
                        source.pos,
                    )
                values = []
                for element in src.items:
                    # Fresh location per iteration; the body env is discarded.
                    iter_env = bind(env, store, binder, element)
                    values.extend(self.eval_nested_block(iter_env, store, body))
            case _:
                raise AssertionError(f"unhandled statement {stmt!r}")
        if self.trace is not None:
            self.trace(stmt, values)
        return env, values

    # --- expressions ---------------------------------------------------------

    def eval_expr(self, env: Env, store: Store, expr: Expr) -> Value:
        if isinstance(expr, SIMPLE_EXPR_TYPES):
            return self.eval_simple_expr(env, store, expr)
        # Statement-expression: run it as the sole statement of a block and
        # collapse the yielded values; its environment never escapes.
        _, values = self.eval_statement(env, store, expr)
        return collapse_values(values)

    def eval_simple_expr(self, env: Env, store: Store, se: SimpleExpr) -> Value:
        frozen = freeze(env, store)
        if not self.check_purity:
            return self._eval_simple(frozen, store, se)
        before = store.contents()
        result = self._eval_simple(frozen, store, se)
        for loc, old in before.items():
            if store.read(loc) is not old and store.read(loc) != old:
                raise AssertionError(
                    f"simple-expression wrote pre-existing location {loc}"
                )
        return result

    def _eval_simple(self, env: Env, store: Store, se: SimpleExpr) -> Value:
        match se:
            case IntLit(value=v):
                return VInt(v)
            case BoolLit(value=v):
                return VBool(v)
            case Name(ident=ident):
                value = lookup(env, store, ident, se.pos)
                if self.on_lookup is not None:
                    self.on_lookup(ident, se.pos)
                return value
            case Lambda(param=param, body=body):
                return VFun(param, body, env)
            case App(fn=fn, arg=arg):
                f = self.eval_expr(env, store, fn)
                a = self.eval_expr(env, store, arg)
                return self.apply(f, a, store, se.pos)
            case BinOp(op=op, lhs=lhs, rhs=rhs):
                left = self.eval_expr(env, store, lhs)
                right = self.eval_expr(env, store, rhs)
                return apply_binop(op, left, right, se.pos)
            case ListLit(elements=elements):
                return VList(
                    tuple(self.eval_expr(env, store, el) for el in elements)
                )
            case Neg(operand=operand):
                value = self.eval_expr(env, store, operand)
                if not isinstance(value, VInt):
                    raise RuntimeTypeError(
                        f"unary '-' requires an integer, got {type_name(value)}",
                        se.pos,
                    )
                return VInt(-value.value)
            case _:
                raise AssertionError(f"unhandled simple-expression {se!r}")

    def apply(self, fn: Value, arg: Value, store: Store,
              pos: Pos | None = None) -> Value:
        """Apply a function value: bind the parameter linearly in the captured
        environment and evaluate the body."""
        if not isinstance(fn, VFun):
            raise RuntimeTypeError(
                f"cannot apply a {type_name(fn)} as a function", pos
            )
        call_env = bind(fn.env, store, fn.param, arg)
        return self.eval_expr(call_env, store, fn.body)


def evaluate(block: Block, *, max_steps: int | None = None) -> Value:
    """Evaluate a program block, raising on error."""
    return Evaluator(max_steps=max_steps).run_program(block)


def eval_program(block: Block, *, max_steps: int | None = None) -> Outcome:
    """Evaluate a program block, packaging language errors as an Outcome.

    ``StepLimitExceeded`` propagates: running out of budget is not a
    program outcome.
    """
    try:
        return Outcome(value=evaluate(block, max_steps=max_steps))
    except (IllformedError, RuntimeTypeError) as err:
        return Outcome(error=err)


def call(fn: Value, *args: Value, max_steps: int | None = None) -> Value:
    """Apply a function value to arguments, left to right, in a fresh store."""
    evaluator = Evaluator(max_steps=max_steps)
    store = Store()
    result = fn
    for arg in args:
        result = evaluator.apply(result, arg, store)
    return result
