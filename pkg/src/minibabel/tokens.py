"""Lexer: source text to a flat token list.

Newlines and ``;`` both produce separator tokens; ``#`` starts a comment
running to end of line.  Integer literals are unsigned (negative numbers
are built by the parser's unary minus).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ParseError, Pos

KEYWORDS = frozenset(
    {"val", "yield", "if", "then", "else", "end", "while", "do", "for", "in",
     "begin", "true", "false"}
)

# Longest match first so e.g. "==" never lexes as two "=" tokens.
_OPERATORS = ("=>", "==", "!=", "<=", ">=", "=", "<", ">", "+", "-", "*")

_PUNCT = {"(": "lparen", ")": "rparen", "[": "lbracket", "]": "rbracket", ",": "comma"}


class TokenKind(Enum):
    INT = "int"
    IDENT = "ident"
    KEYWORD = "keyword"
    OP = "op"
    LPAREN = "lparen"
    RPAREN = "rparen"
    LBRACKET = "lbracket"
    RBRACKET = "rbracket"
    COMMA = "comma"
    SEP = "sep"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    pos: Pos


def _is_ident_start(ch: str) -> bool:
    return ch.isascii() and (ch.isalpha() or ch == "_")


def _is_ident_char(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch == "_")


def tokenize(source: str) -> list[Token]:
    """Tokenize ``source``, raising :class:`ParseError` on any character
    that belongs to no token class."""
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    while i < n:
        ch = source[i]
        pos = Pos(line, col)

        if ch == "\n":
            tokens.append(Token(TokenKind.SEP, "\n", pos))
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
                col += 1
            continue
        if ch == ";":
            tokens.append(Token(TokenKind.SEP, ";", pos))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and _is_ident_start(source[j]):
                raise ParseError(f"malformed integer literal {source[i:j + 1]!r}", pos)
            text = source[i:j]
            col += j - i
            i = j
            tokens.append(Token(TokenKind.INT, text, pos))
            continue
        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident_char(source[j]):
                j += 1
            text = source[i:j]
            col += j - i
            i = j
            kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENT
            tokens.append(Token(kind, text, pos))
            continue
        if ch in _PUNCT:
            tokens.append(Token(TokenKind[_PUNCT[ch].upper()], ch, pos))
            i += 1
            col += 1
            continue
        for op in _OPERATORS:
            if source.startswith(op, i):
                tokens.append(Token(TokenKind.OP, op, pos))
                i += len(op)
                col += len(op)
                break
        else:
            raise ParseError(f"unrecognized character {ch!r}", pos)

    return tokens
