"""Canonical formatter.

One statement per line, two-space indentation, minimal parentheses.  The
output re-parses to the same AST (modulo positions), which is what the
round-trip property checks.  ``yield`` is always written explicitly.
"""

from __future__ import annotations

from .ast import (
    ADDITIVE_OPS,
    App,
    Assign,
    BinOp,
    Block,
    BlockStmt,
    BoolLit,
    COMPARISON_OPS,
    Expr,
    For,
    If,
    IntLit,
    Lambda,
    ListLit,
    Name,
    Neg,
    Statement,
    Val,
    While,
    Yield,
)

# Precedence levels, loosest to tightest.  Statement-expressions are
# self-delimiting and sit at atom level.
_LAMBDA, _CMP, _ADD, _MUL, _UNARY, _APP, _ATOM = range(1, 8)

_INDENT = "  "


def format_program(block: Block) -> str:
    """Format a whole program, one statement per line, trailing newline."""
    return _format_block(block, 0)


def format_statement(stmt: Statement, indent: int = 0) -> str:
    """Format a single statement; the first line carries no indentation."""
    return _format_stmt(stmt, indent)


def format_expr(expr: Expr) -> str:
    return _format_expr(expr, _LAMBDA, 0)


def _format_block(block: Block, indent: int) -> str:
    prefix = _INDENT * indent
    return "".join(
        prefix + _format_stmt(stmt, indent) + "\n" for stmt in block.statements
    )


def _format_stmt(stmt: Statement, indent: int) -> str:
    prefix = _INDENT * indent
    match stmt:
        case Val(target=target, rhs=rhs):
            return f"val {target} = {_format_expr(rhs, _LAMBDA, indent)}"
        case Assign(target=target, rhs=rhs):
            return f"{target} = {_format_expr(rhs, _LAMBDA, indent)}"
        case Yield(value=operand):
            return f"yield {_format_expr(operand, _LAMBDA, indent)}"
        case If(cond=cond, then=then, orelse=orelse):
            return (
                f"if {_format_expr(cond, _CMP, indent)} then\n"
                + _format_block(then, indent + 1)
                + prefix + "else\n"
                + _format_block(orelse, indent + 1)
                + prefix + "end"
            )
        case While(cond=cond, body=body):
            return (
                f"while {_format_expr(cond, _CMP, indent)} do\n"
                + _format_block(body, indent + 1)
                + prefix + "end"
            )
        case For(binder=binder, source=source, body=body):
            return (
                f"for {binder} in {_format_expr(source, _CMP, indent)} do\n"
                + _format_block(body, indent + 1)
                + prefix + "end"
            )
        case BlockStmt(body=body):
            return "begin\n" + _format_block(body, indent + 1) + prefix + "end"
        case _:
            raise AssertionError(f"unhandled statement {stmt!r}")


def _format_expr(expr: Expr, min_level: int, indent: int) -> str:
    text, level = _render(expr, indent)
    if level < min_level:
        return f"({text})"
    return text


def _render(expr: Expr, indent: int) -> tuple[str, int]:
    match expr:
        case IntLit(value=v):
            return str(v), _ATOM
        case BoolLit(value=v):
            return ("true" if v else "false"), _ATOM
        case Name(ident=ident):
            return ident, _ATOM
        case ListLit(elements=elements):
            inner = ", ".join(_format_expr(el, _LAMBDA, indent) for el in elements)
            return f"[{inner}]", _ATOM
        case Lambda(param=param, body=body):
            return f"{param} => {_format_expr(body, _LAMBDA, indent)}", _LAMBDA
        case App(fn=fn, arg=arg):
            fn_text = _format_expr(fn, _APP, indent)
            arg_text = _format_expr(arg, _ATOM, indent)
            return f"{fn_text} {arg_text}", _APP
        case Neg(operand=operand):
            return f"-{_format_expr(operand, _UNARY, indent)}", _UNARY
        case BinOp(op=op, lhs=lhs, rhs=rhs):
            if op in COMPARISON_OPS:
                # Non-associative: both sides must bind tighter.
                left = _format_expr(lhs, _ADD, indent)
                right = _format_expr(rhs, _ADD, indent)
                return f"{left} {op.symbol} {right}", _CMP
            if op in ADDITIVE_OPS:
                left = _format_expr(lhs, _ADD, indent)
                right = _format_expr(rhs, _MUL, indent)
                return f"{left} {op.symbol} {right}", _ADD
            left = _format_expr(lhs, _MUL, indent)
            right = _format_expr(rhs, _UNARY, indent)
            return f"{left} {op.symbol} {right}", _MUL
        case _:
            # Statement-expression: embed its multi-line statement form.
            return _format_stmt(expr, indent), _ATOM
