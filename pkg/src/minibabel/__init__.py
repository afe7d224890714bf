"""Mini Babel-17: an embeddable interpreter for a purely functional
structured programming language built on linear scope.

Typical embedding::

    import minibabel

    value = minibabel.run_source("val x = 2\\nx*x")
    assert value == minibabel.VInt(4)
"""

from __future__ import annotations

from . import ast
from .check import (
    CheckEnv,
    CheckReport,
    EMPTY_CHECK_ENV,
    check_block,
    check_program,
)
from .errors import (
    IllformedError,
    LangError,
    ParseError,
    Pos,
    RuntimeTypeError,
    StepLimitExceeded,
)
from .interp import (
    Evaluator,
    Outcome,
    apply_binop,
    call,
    collapse_values,
    eval_program,
    evaluate,
)
from .parse import parse, parse_program
from .pretty import format_expr, format_program, format_statement
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
    from_value,
    lookup,
    rebind,
    render_value,
    to_value,
    values_equal,
)
from .tokens import Token, TokenKind, tokenize

__version__ = "0.1.0"


def run_source(source: str, *, check: bool = True,
               max_steps: int | None = None) -> Value:
    """Parse, optionally check, and evaluate a program, raising on error."""
    block = parse_program(source)
    if check:
        report = check_program(block)
        if not report.wellformed:
            raise IllformedError(report.message or "ill-formed program", report.pos)
    return evaluate(block, max_steps=max_steps)


__all__ = [
    "ast",
    "CheckEnv",
    "CheckReport",
    "EMPTY_CHECK_ENV",
    "check_block",
    "check_program",
    "IllformedError",
    "LangError",
    "ParseError",
    "Pos",
    "RuntimeTypeError",
    "StepLimitExceeded",
    "Evaluator",
    "Outcome",
    "apply_binop",
    "call",
    "collapse_values",
    "eval_program",
    "evaluate",
    "parse",
    "parse_program",
    "format_expr",
    "format_program",
    "format_statement",
    "EMPTY_ENV",
    "Env",
    "Store",
    "VBool",
    "VFun",
    "VInt",
    "VList",
    "Value",
    "bind",
    "freeze",
    "from_value",
    "lookup",
    "rebind",
    "render_value",
    "to_value",
    "values_equal",
    "Token",
    "TokenKind",
    "tokenize",
    "run_source",
    "__version__",
]
