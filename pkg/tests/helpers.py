"""Shared test utilities: AST transforms, outcome comparison, and the
reusable property checks that both the property suite and the acceptance
suite run."""

from __future__ import annotations

from dataclasses import replace

from minibabel import (
    Evaluator,
    IllformedError,
    Pos,
    RuntimeTypeError,
    Store,
    EMPTY_ENV,
    check_program,
    evaluate,
    parse_program,
)
from minibabel.ast import (
    App,
    Assign,
    BinOp,
    Block,
    BlockStmt,
    For,
    If,
    IntLit,
    Lambda,
    ListLit,
    Neg,
    Val,
    While,
    Yield,
)
from minibabel.conformance import describe_value

P = Pos(0, 0)


def first_expr(source: str):
    """Parse a one-statement program and return the yielded expression."""
    block = parse_program(source)
    assert len(block.statements) == 1
    stmt = block.statements[0]
    assert isinstance(stmt, Yield)
    return stmt.value


def outcome_description(block: Block, *, max_steps: int | None = 100_000) -> str:
    """Stable description of a program's outcome; closures are described by
    probing, errors by their rendering."""
    try:
        return "ok:" + describe_value(evaluate(block, max_steps=max_steps))
    except (IllformedError, RuntimeTypeError) as exc:
        return "err:" + exc.render()
    except RecursionError:
        return "recursion"


def map_expr(expr, fn):
    """Rebuild ``expr`` bottom-up, applying ``fn`` to every expression node."""
    match expr:
        case Lambda():
            expr = replace(expr, body=map_expr(expr.body, fn))
        case App():
            expr = replace(expr, fn=map_expr(expr.fn, fn),
                           arg=map_expr(expr.arg, fn))
        case BinOp():
            expr = replace(expr, lhs=map_expr(expr.lhs, fn),
                           rhs=map_expr(expr.rhs, fn))
        case ListLit():
            expr = replace(
                expr, elements=tuple(map_expr(el, fn) for el in expr.elements)
            )
        case Neg():
            expr = replace(expr, operand=map_expr(expr.operand, fn))
        case If() | While() | For() | BlockStmt():
            expr = map_statement(expr, fn)
    return fn(expr)


def map_statement(stmt, fn):
    match stmt:
        case Val() | Assign():
            return replace(stmt, rhs=map_expr(stmt.rhs, fn))
        case Yield():
            return replace(stmt, value=map_expr(stmt.value, fn))
        case BlockStmt():
            return replace(stmt, body=map_block(stmt.body, fn))
        case If():
            return replace(
                stmt,
                cond=map_expr(stmt.cond, fn),
                then=map_block(stmt.then, fn),
                orelse=map_block(stmt.orelse, fn),
            )
        case While():
            return replace(stmt, cond=map_expr(stmt.cond, fn),
                           body=map_block(stmt.body, fn))
        case For():
            return replace(stmt, source=map_expr(stmt.source, fn),
                           body=map_block(stmt.body, fn))
    raise AssertionError(f"unhandled statement {stmt!r}")


def map_block(block: Block, fn) -> Block:
    return Block(
        tuple(map_statement(stmt, fn) for stmt in block.statements), block.pos
    )


def zero_literals(block: Block) -> Block:
    """Replace every integer literal with 0 (checker-invariance transform)."""
    def zero(expr):
        if isinstance(expr, IntLit):
            return replace(expr, value=0)
        return expr

    return map_block(block, zero)


def unroll_first_while(block: Block) -> Block:
    """Replace the first (top-level) while statement with its one-step
    unrolling: ``if c then begin <body>; while c do body end end else begin
    end end``."""
    statements = list(block.statements)
    for i, stmt in enumerate(statements):
        if isinstance(stmt, While):
            unrolled = If(
                stmt.cond,
                Block(stmt.body.statements + (stmt,), stmt.body.pos),
                Block((), stmt.pos),
                stmt.pos,
            )
            statements[i] = unrolled
            return Block(tuple(statements), block.pos)
    raise AssertionError("no top-level while statement found")


def eval_threaded(block: Block):
    """Evaluate a program statement-by-statement, returning the final env,
    the store, and the full value sequence."""
    evaluator = Evaluator()
    env = EMPTY_ENV
    store = Store()
    values = []
    per_statement = []
    for stmt in block.statements:
        env, yielded = evaluator.eval_statement(env, store, stmt)
        values.extend(yielded)
        per_statement.append(yielded)
    return env, store, values, per_statement


# --- property checks shared by test_properties and test_acceptance -----------


TERMINATING_LOOP_SOURCES = [
    "val i = 5\nwhile 0 < i do i = i - 1; yield i end",
    "val i = 0\nwhile i < 7 do i = i + 2 end\ni",
    "val a = 1\nval n = 6\nwhile 0 < n do a = a * 2; n = n - 1 end\na",
    "val s = 0\nval i = 1\nwhile i <= 10 do s = s + i; i = i + 1 end\ns",
    "val i = 4\nwhile 0 < i do yield i * i; i = i - 1 end",
    "val b = true\nval n = 0\nwhile b do n = n + 1; b = n < 3 end\nn",
    "val i = 3\nwhile 0 < i do begin val t = i; yield t end; i = i - 1 end",
    "val i = 2\nwhile 0 < i do if i == 2 then yield 20 else yield 10 end; i = i - 1 end",
    "val i = 6\nwhile 3 < i do i = i - 1 end\nyield i",
    "val x = 1\nwhile x != 27 do x = x * 3 end\nx",
    "val i = 5\nval acc = 0\nwhile 0 < i do for k in [1, 2] do acc = acc + k end; i = i - 1 end\nacc",
    "val i = 2\nwhile 0 < i do val j = i * 10; yield j; i = i - 1 end",
    "while false do yield 99 end",
    "val i = 1\nwhile i < 1 do i = i + 1 end\nyield i",
    "val n = 4\nval f = 1\nwhile 1 < n do f = f * n; n = n - 1 end\nf",
    "val outer = 2\nwhile 0 < outer do val inner = 2\nwhile 0 < inner do yield outer * inner; inner = inner - 1 end\nouter = outer - 1 end",
    "val i = 3\nwhile 0 < i do yield [i, i * 2]; i = i - 1 end",
    "val flag = false\nval i = 0\nwhile i < 5 do i = i + 3 end\nif flag then yield 0 else yield i end",
    "val i = 10\nwhile 5 < i do i = i - 2 end\ni",
    "val t = 0\nval i = 0\nwhile i < 4 do t = t + i * i; i = i + 1 end\nt",
]


def check_while_unrolling(source: str) -> None:
    """The while statement and its one-step unrolling are observationally
    equivalent: same values, same final environment, same store contents."""
    original = parse_program(source)
    unrolled = unroll_first_while(original)
    env_a, store_a, values_a, _ = eval_threaded(original)
    env_b, store_b, values_b, _ = eval_threaded(unrolled)
    assert values_a == values_b
    assert env_a == env_b
    assert store_a.contents() == store_b.contents()


def check_nested_env_isolation(block: Block) -> None:
    """After a nested-construct statement, the environment is unchanged as a
    mapping; only the store may differ."""
    evaluator = Evaluator(max_steps=50_000)
    env = EMPTY_ENV
    store = Store()
    for stmt in block.statements:
        before = env
        env, _ = evaluator.eval_statement(env, store, stmt)
        if isinstance(stmt, (If, While, For, BlockStmt, Yield)):
            assert env == before
            assert env.nonlinear == before.nonlinear
            assert env.linear == before.linear


def check_block_concatenation(block: Block) -> None:
    """A block's values are the concatenation of its statements' values."""
    env, store, values, per_statement = eval_threaded(block)
    flattened = [v for chunk in per_statement for v in chunk]
    assert values == flattened
    evaluator = Evaluator()
    _, whole = evaluator.eval_block(EMPTY_ENV, Store(), block)
    assert [describe_value(v) for v in whole] == [describe_value(v) for v in values]


def check_env_split(env) -> None:
    assert not (set(env.nonlinear) & set(env.linear))
