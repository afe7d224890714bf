"""Abstract syntax tree for Mini Babel-17.

A program is a :class:`Block`, a sequence of statements.  Statements come in
seven kinds; ``if``/``while``/``for``/``begin`` statements double as
expressions (statement-expressions), so the ``Expr`` union includes them.
Simple-expressions are the pure fragment evaluated under a frozen
environment.

Node equality ignores source positions (``pos`` fields are excluded from
comparison), so two parses of equivalent text compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .errors import Pos


class Op(Enum):
    """Binary operators, in the closed set the language supports."""

    MUL = "*"
    ADD = "+"
    SUB = "-"
    EQ = "=="
    NE = "!="
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="

    @property
    def symbol(self) -> str:
        return self.value


COMPARISON_OPS = frozenset({Op.EQ, Op.NE, Op.LT, Op.LE, Op.GT, Op.GE})
ADDITIVE_OPS = frozenset({Op.ADD, Op.SUB})


# --- simple-expressions ---------------------------------------------------


@dataclass(frozen=True)
class IntLit:
    value: int
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class BoolLit:
    value: bool
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class Name:
    """An identifier occurrence in expression position."""

    ident: str
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class Lambda:
    """``param => body``; body is a full expression and extends maximally."""

    param: str
    body: Expr
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class App:
    """Function application by juxtaposition, left-associative."""

    fn: Expr
    arg: Expr
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class BinOp:
    op: Op
    lhs: Expr
    rhs: Expr
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class ListLit:
    """``[e1, ..., en]``, evaluated left to right into a list value."""

    elements: tuple[Expr, ...]
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class Neg:
    """Unary minus; binds tighter than ``*``, looser than application."""

    operand: Expr
    pos: Pos = field(compare=False)


# --- statements -----------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """An ordered statement sequence; order is significant."""

    statements: tuple[Statement, ...]
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class Val:
    """``val target = rhs``: a new, shadowing, linear binding."""

    target: str
    rhs: Expr
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class Assign:
    """``target = rhs``: rebinds a target already in linear scope."""

    target: str
    rhs: Expr
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class Yield:
    """Contributes one value to the enclosing block's value sequence."""

    value: Expr
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class If:
    cond: SimpleExpr
    then: Block
    orelse: Block
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class While:
    cond: SimpleExpr
    body: Block
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class For:
    binder: str
    source: SimpleExpr
    body: Block
    pos: Pos = field(compare=False)


@dataclass(frozen=True)
class BlockStmt:
    """``begin ... end``."""

    body: Block
    pos: Pos = field(compare=False)


# --- unions ---------------------------------------------------------------

SimpleExpr = Union[IntLit, BoolLit, Name, Lambda, App, BinOp, ListLit, Neg]
Statement = Union[Val, Assign, Yield, If, While, For, BlockStmt]
# Statement-expressions: the statement kinds usable in expression position.
StmtExpr = Union[If, While, For, BlockStmt]
Expr = Union[SimpleExpr, StmtExpr]

SIMPLE_EXPR_TYPES = (IntLit, BoolLit, Name, Lambda, App, BinOp, ListLit, Neg)
STMT_EXPR_TYPES = (If, While, For, BlockStmt)
STATEMENT_TYPES = (Val, Assign, Yield, If, While, For, BlockStmt)


def statement_kind(stmt: Statement) -> str:
    """Short lowercase tag for a statement, used in traces and messages."""
    return {
        Val: "val",
        Assign: "assign",
        Yield: "yield",
        If: "if",
        While: "while",
        For: "for",
        BlockStmt: "block",
    }[type(stmt)]
