"""Seed-deterministic random program generation over the grammar.

Identifier uses are drawn from a small pool with no regard to scope, so
both well-formed and ill-formed programs arise.  ``for`` sources are
always bounded literal lists and ``while`` is excluded by default, which
keeps every generated program terminating (up to pathological closure
self-application, which callers guard with a recursion limit).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..ast import (
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
    SimpleExpr,
    Statement,
    Val,
    While,
    Yield,
)
from ..errors import Pos

_GEN_POS = Pos(1, 1)

_CMP_OPS = (Op.EQ, Op.NE, Op.LT, Op.LE, Op.GT, Op.GE)
_ARITH_OPS = (Op.MUL, Op.ADD, Op.SUB)


@dataclass(frozen=True)
class GeneratorConfig:
    max_depth: int = 6
    identifier_pool: tuple[str, ...] = ("x", "y", "z")
    loop_bound: int = 3
    seed: int = 0
    include_while: bool = False
    max_block_len: int = 3


def generate_program(config: GeneratorConfig) -> Block:
    """Generate a random program block; identical configs (same seed)
    produce identical ASTs."""
    rng = random.Random(config.seed)
    if config.max_depth <= 0:
        return _leaf_block(rng)
    return _gen_block(rng, config, config.max_depth)


def _leaf_block(rng: random.Random) -> Block:
    return Block((Yield(IntLit(rng.randrange(10), _GEN_POS), _GEN_POS),), _GEN_POS)


def _gen_block(rng: random.Random, cfg: GeneratorConfig, depth: int) -> Block:
    if depth <= 0:
        return _leaf_block(rng)
    count = rng.randint(0, cfg.max_block_len)
    return Block(
        tuple(_gen_statement(rng, cfg, depth - 1) for _ in range(count)), _GEN_POS
    )


def _gen_statement(rng: random.Random, cfg: GeneratorConfig, depth: int) -> Statement:
    kinds = ["val", "yield", "assign"]
    weights = [30, 22, 10]
    if depth > 0:
        kinds += ["if", "for", "block"]
        weights += [10, 10, 10]
        if cfg.include_while:
            kinds.append("while")
            weights.append(6)
    kind = rng.choices(kinds, weights)[0]
    if kind == "val":
        return Val(_pick_ident(rng, cfg), _gen_expr(rng, cfg, depth), _GEN_POS)
    if kind == "assign":
        return Assign(_pick_ident(rng, cfg), _gen_expr(rng, cfg, depth), _GEN_POS)
    if kind == "yield":
        return Yield(_gen_expr(rng, cfg, depth), _GEN_POS)
    if kind == "if":
        return If(
            _gen_condition(rng, cfg, depth),
            _gen_block(rng, cfg, depth),
            _gen_block(rng, cfg, depth),
            _GEN_POS,
        )
    if kind == "for":
        return For(
            _pick_ident(rng, cfg),
            _gen_literal_list(rng, cfg),
            _gen_block(rng, cfg, depth),
            _GEN_POS,
        )
    if kind == "while":
        return While(_gen_condition(rng, cfg, depth), _gen_block(rng, cfg, depth), _GEN_POS)
    return BlockStmt(_gen_block(rng, cfg, depth), _GEN_POS)


def _pick_ident(rng: random.Random, cfg: GeneratorConfig) -> str:
    return rng.choice(cfg.identifier_pool)


def _gen_literal_list(rng: random.Random, cfg: GeneratorConfig) -> ListLit:
    count = rng.randint(0, cfg.loop_bound)
    return ListLit(
        tuple(IntLit(rng.randrange(10), _GEN_POS) for _ in range(count)), _GEN_POS
    )


def _gen_condition(rng: random.Random, cfg: GeneratorConfig, depth: int) -> SimpleExpr:
    roll = rng.random()
    if roll < 0.45 or depth <= 0:
        return BoolLit(rng.random() < 0.5, _GEN_POS)
    if roll < 0.60:
        return Name(_pick_ident(rng, cfg), _GEN_POS)
    return BinOp(
        rng.choice(_CMP_OPS),
        _gen_expr(rng, cfg, depth - 1),
        _gen_expr(rng, cfg, depth - 1),
        _GEN_POS,
    )


def _gen_leaf_expr(rng: random.Random, cfg: GeneratorConfig) -> SimpleExpr:
    roll = rng.random()
    if roll < 0.45:
        return IntLit(rng.randrange(10), _GEN_POS)
    if roll < 0.60:
        return BoolLit(rng.random() < 0.5, _GEN_POS)
    return Name(_pick_ident(rng, cfg), _GEN_POS)


def _gen_expr(rng: random.Random, cfg: GeneratorConfig, depth: int) -> Expr:
    if depth <= 0:
        return _gen_leaf_expr(rng, cfg)
    roll = rng.random()
    if roll < 0.40:
        return _gen_leaf_expr(rng, cfg)
    if roll < 0.55:
        return BinOp(
            rng.choice(_ARITH_OPS),
            _gen_expr(rng, cfg, depth - 1),
            _gen_expr(rng, cfg, depth - 1),
            _GEN_POS,
        )
    if roll < 0.65:
        return Lambda(
            _pick_ident(rng, cfg), _gen_expr(rng, cfg, depth - 1), _GEN_POS
        )
    if roll < 0.73:
        return App(
            _gen_expr(rng, cfg, depth - 1),
            _gen_expr(rng, cfg, depth - 1),
            _GEN_POS,
        )
    if roll < 0.80:
        count = rng.randint(0, 3)
        return ListLit(
            tuple(_gen_expr(rng, cfg, depth - 1) for _ in range(count)), _GEN_POS
        )
    if roll < 0.85:
        return Neg(_gen_expr(rng, cfg, depth - 1), _GEN_POS)
    return _gen_stmt_expr(rng, cfg, depth)


def _gen_stmt_expr(rng: random.Random, cfg: GeneratorConfig, depth: int) -> Expr:
    kinds = ["block", "if", "for"]
    if cfg.include_while:
        kinds.append("while")
    kind = rng.choice(kinds)
    if kind == "block":
        return BlockStmt(_gen_block(rng, cfg, depth - 1), _GEN_POS)
    if kind == "if":
        return If(
            _gen_condition(rng, cfg, depth - 1),
            _gen_block(rng, cfg, depth - 1),
            _gen_block(rng, cfg, depth - 1),
            _GEN_POS,
        )
    if kind == "for":
        return For(
            _pick_ident(rng, cfg),
            _gen_literal_list(rng, cfg),
            _gen_block(rng, cfg, depth - 1),
            _GEN_POS,
        )
    return While(
        _gen_condition(rng, cfg, depth - 1), _gen_block(rng, cfg, depth - 1), _GEN_POS
    )
