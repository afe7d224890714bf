"""Recursive-descent parser.

Precedence, loosest to tightest: lambda ``=>`` (right-associative, body
extends maximally) < comparison (non-associative) < additive (left) <
multiplicative (left) < unary ``-`` < application (juxtaposition, left) <
atoms.  ``if``/``while``/``for``/``begin`` constructs are parsed as atoms
when they appear in expression position (statement-expressions).

A bare expression is accepted only as the last statement of a block, where
it desugars to a ``yield`` statement.  A trailing bare ``if``/``while``/
``for``/``begin`` is read as a statement, not as a dropped ``yield``.
"""

from __future__ import annotations

from .ast import (
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
    Op,
    STMT_EXPR_TYPES,
    SimpleExpr,
    Statement,
    Val,
    While,
    Yield,
)
from .errors import ParseError, Pos
from .tokens import Token, TokenKind, tokenize

_COMPARISON_TEXTS = {op.symbol for op in COMPARISON_OPS}
_ADDITIVE_TEXTS = {"+", "-"}
_OPS_BY_TEXT = {op.symbol: op for op in Op}

# Keywords that may open a statement-expression in atom position.
_STMT_EXPR_KEYWORDS = ("if", "while", "for", "begin")
_ATOM_KEYWORDS = ("true", "false") + _STMT_EXPR_KEYWORDS
_BINARY_OP_TEXTS = _COMPARISON_TEXTS | _ADDITIVE_TEXTS | {"*"}


def parse_program(source: str) -> Block:
    """Tokenize and parse ``source`` into a program block."""
    return parse(tokenize(source))


def parse(tokens: list[Token]) -> Block:
    """Parse a token stream into a program block."""
    parser = _Parser(tokens)
    block = parser.parse_block()
    tok = parser.peek()
    if tok is not None:
        raise ParseError(f"unexpected {_describe(tok)} outside a block", tok.pos)
    return block


def _describe(tok: Token | None) -> str:
    if tok is None:
        return "end of input"
    if tok.kind is TokenKind.SEP:
        return "end of statement"
    if tok.kind is TokenKind.INT:
        return f"integer {tok.text}"
    return f"'{tok.text}'"


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    # --- token stream helpers ---------------------------------------------

    def peek(self, offset: int = 0) -> Token | None:
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def eof_pos(self) -> Pos:
        if not self.tokens:
            return Pos(1, 1)
        last = self.tokens[-1]
        return Pos(last.pos.line, last.pos.col + len(last.text))

    def pos(self) -> Pos:
        tok = self.peek()
        return tok.pos if tok is not None else self.eof_pos()

    def at_kw(self, *texts: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind is TokenKind.KEYWORD and tok.text in texts

    def at_op(self, *texts: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind is TokenKind.OP and tok.text in texts

    def at_kind(self, kind: TokenKind) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind is kind

    def skip_seps(self) -> None:
        while self.at_kind(TokenKind.SEP):
            self.advance()

    def fail(self, expected: str) -> ParseError:
        tok = self.peek()
        msg = f"expected {expected}, found {_describe(tok)}"
        return ParseError(msg, self.pos(), at_eof=tok is None)

    def expect_kw(self, text: str) -> Token:
        if not self.at_kw(text):
            raise self.fail(f"'{text}'")
        return self.advance()

    def expect_op(self, text: str) -> Token:
        if not self.at_op(text):
            raise self.fail(f"'{text}'")
        return self.advance()

    def expect_ident(self) -> Token:
        if not self.at_kind(TokenKind.IDENT):
            raise self.fail("an identifier")
        return self.advance()

    def expect_kind(self, kind: TokenKind, what: str) -> Token:
        if not self.at_kind(kind):
            raise self.fail(what)
        return self.advance()

    # --- blocks and statements ---------------------------------------------

    def at_block_end(self) -> bool:
        return self.peek() is None or self.at_kw("end", "else")

    def parse_block(self) -> Block:
        """Parse statements until ``end``, ``else``, or end of input."""
        self.skip_seps()
        block_pos = self.pos()
        statements: list[Statement] = []
        while not self.at_block_end():
            stmt, bare = self.parse_statement()
            statements.append(stmt)
            if self.at_block_end():
                break
            if not self.at_kind(TokenKind.SEP):
                raise self.fail("a separator or the end of the block")
            self.skip_seps()
            if bare and not self.at_block_end():
                raise ParseError(
                    "a bare expression must be the last statement of its block",
                    stmt.pos,
                )
        return Block(tuple(statements), block_pos)

    def parse_statement(self) -> tuple[Statement, bool]:
        """Parse one statement.  The flag reports whether it was a bare
        expression desugared to ``yield`` (legal only in final position)."""
        tok = self.peek()
        if tok is None:
            raise self.fail("a statement")
        if tok.kind is TokenKind.KEYWORD:
            if tok.text == "val":
                self.advance()
                target = self.expect_ident()
                self.expect_op("=")
                self.skip_seps()
                rhs = self.parse_expression()
                return Val(target.text, rhs, tok.pos), False
            if tok.text == "yield":
                self.advance()
                value = self.parse_expression()
                return Yield(value, tok.pos), False
            if tok.text == "if":
                return self.statement_or_operand(self.parse_if())
            if tok.text == "while":
                return self.statement_or_operand(self.parse_while())
            if tok.text == "for":
                return self.statement_or_operand(self.parse_for())
            if tok.text == "begin":
                return self.statement_or_operand(self.parse_begin())
        if tok.kind is TokenKind.IDENT:
            nxt = self.peek(1)
            if nxt is not None and nxt.kind is TokenKind.OP and nxt.text == "=":
                self.advance()
                self.advance()
                self.skip_seps()
                rhs = self.parse_expression()
                return Assign(tok.text, rhs, tok.pos), False
        start = self.pos()
        value = self.parse_expression()
        return Yield(value, start), True

    def statement_or_operand(self, construct: Statement) -> tuple[Statement, bool]:
        """Decide whether a freshly parsed ``if``/``while``/``for``/``begin``
        construct stands as a statement or opens a larger expression, as in
        ``begin ... end * begin ... end``."""
        tok = self.peek()
        continues = self.at_atom_start() or (
            tok is not None
            and tok.kind is TokenKind.OP
            and tok.text in _BINARY_OP_TEXTS
        )
        if not continues:
            return construct, False
        value = self.continue_expression(construct)
        return Yield(value, construct.pos), True

    def parse_if(self) -> If:
        tok = self.expect_kw("if")
        cond = self.parse_condition("the condition of an if")
        self.expect_kw("then")
        then = self.parse_block()
        self.expect_kw("else")
        orelse = self.parse_block()
        self.expect_kw("end")
        return If(cond, then, orelse, tok.pos)

    def parse_while(self) -> While:
        tok = self.expect_kw("while")
        cond = self.parse_condition("the condition of a while")
        self.expect_kw("do")
        body = self.parse_block()
        self.expect_kw("end")
        return While(cond, body, tok.pos)

    def parse_for(self) -> For:
        tok = self.expect_kw("for")
        binder = self.expect_ident()
        self.expect_kw("in")
        self.skip_seps()
        source = self.parse_condition("the source of a for")
        self.expect_kw("do")
        body = self.parse_block()
        self.expect_kw("end")
        return For(binder.text, source, body, tok.pos)

    def parse_begin(self) -> BlockStmt:
        tok = self.expect_kw("begin")
        body = self.parse_block()
        self.expect_kw("end")
        return BlockStmt(body, tok.pos)

    def parse_condition(self, what: str) -> SimpleExpr:
        pos = self.pos()
        expr = self.parse_comparison()
        if isinstance(expr, STMT_EXPR_TYPES):
            raise ParseError(f"{what} must be a simple expression", pos)
        return expr

    # --- expressions --------------------------------------------------------

    def parse_expression(self) -> Expr:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.IDENT:
            nxt = self.peek(1)
            if nxt is not None and nxt.kind is TokenKind.OP and nxt.text == "=>":
                self.advance()
                self.advance()
                self.skip_seps()
                body = self.parse_expression()
                return Lambda(tok.text, body, tok.pos)
        return self.parse_comparison()

    def continue_expression(self, left: Expr) -> Expr:
        """Resume expression parsing with ``left`` as the leading operand."""
        return self._comparison_tail(self._additive_loop(
            self._multiplicative_loop(self._application_loop(left))))

    def parse_comparison(self) -> Expr:
        return self._comparison_tail(self.parse_additive())

    def _comparison_tail(self, lhs: Expr) -> Expr:
        if not (self.at_kind(TokenKind.OP) and self.peek().text in _COMPARISON_TEXTS):
            return lhs
        op_tok = self.advance()
        self.skip_seps()
        rhs = self.parse_additive()
        if self.at_kind(TokenKind.OP) and self.peek().text in _COMPARISON_TEXTS:
            raise ParseError("comparison operators cannot be chained", self.pos())
        return BinOp(_OPS_BY_TEXT[op_tok.text], lhs, rhs, op_tok.pos)

    def parse_additive(self) -> Expr:
        return self._additive_loop(self.parse_multiplicative())

    def _additive_loop(self, expr: Expr) -> Expr:
        while self.at_kind(TokenKind.OP) and self.peek().text in _ADDITIVE_TEXTS:
            op_tok = self.advance()
            self.skip_seps()
            rhs = self.parse_multiplicative()
            expr = BinOp(_OPS_BY_TEXT[op_tok.text], expr, rhs, op_tok.pos)
        return expr

    def parse_multiplicative(self) -> Expr:
        return self._multiplicative_loop(self.parse_unary())

    def _multiplicative_loop(self, expr: Expr) -> Expr:
        while self.at_op("*"):
            op_tok = self.advance()
            self.skip_seps()
            rhs = self.parse_unary()
            expr = BinOp(Op.MUL, expr, rhs, op_tok.pos)
        return expr

    def parse_unary(self) -> Expr:
        if self.at_op("-"):
            tok = self.advance()
            self.skip_seps()
            return Neg(self.parse_unary(), tok.pos)
        return self.parse_application()

    def at_atom_start(self) -> bool:
        tok = self.peek()
        if tok is None:
            return False
        if tok.kind in (TokenKind.INT, TokenKind.IDENT, TokenKind.LPAREN,
                        TokenKind.LBRACKET):
            return True
        return tok.kind is TokenKind.KEYWORD and tok.text in _ATOM_KEYWORDS

    def parse_application(self) -> Expr:
        return self._application_loop(self.parse_atom())

    def _application_loop(self, expr: Expr) -> Expr:
        while self.at_atom_start():
            arg = self.parse_atom()
            expr = App(expr, arg, expr.pos)
        return expr

    def parse_atom(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise self.fail("an expression")
        if tok.kind is TokenKind.INT:
            self.advance()
            return IntLit(int(tok.text), tok.pos)
        if tok.kind is TokenKind.IDENT:
            self.advance()
            return Name(tok.text, tok.pos)
        if tok.kind is TokenKind.KEYWORD:
            if tok.text in ("true", "false"):
                self.advance()
                return BoolLit(tok.text == "true", tok.pos)
            if tok.text == "if":
                return self.parse_if()
            if tok.text == "while":
                return self.parse_while()
            if tok.text == "for":
                return self.parse_for()
            if tok.text == "begin":
                return self.parse_begin()
            raise self.fail("an expression")
        if tok.kind is TokenKind.LPAREN:
            self.advance()
            self.skip_seps()
            inner = self.parse_expression()
            self.skip_seps()
            if not self.at_kind(TokenKind.RPAREN):
                raise self.fail("')'")
            self.advance()
            return inner
        if tok.kind is TokenKind.LBRACKET:
            self.advance()
            self.skip_seps()
            elements: list[Expr] = []
            if not self.at_kind(TokenKind.RBRACKET):
                while True:
                    elements.append(self.parse_expression())
                    self.skip_seps()
                    if self.at_kind(TokenKind.COMMA):
                        self.advance()
                        self.skip_seps()
                        continue
                    break
            if not self.at_kind(TokenKind.RBRACKET):
                raise self.fail("']' or ','")
            self.advance()
            return ListLit(tuple(elements), tok.pos)
        raise self.fail("an expression")
