"""Conformance tooling: the golden corpus, the program generator, and the
soundness fuzzer."""

from __future__ import annotations

from .corpus import (
    CaseResult,
    CorpusCase,
    CorpusReport,
    REQUIRED_CASES,
    load_corpus,
    run_case,
    run_corpus,
)
from .fuzz import (
    DEFAULT_STEP_BUDGET,
    FuzzReport,
    FuzzViolation,
    describe_value,
    iter_statement_removals,
    run_soundness_fuzz,
    shrink_block,
)
from .generate import GeneratorConfig, generate_program

__all__ = [
    "CaseResult",
    "CorpusCase",
    "CorpusReport",
    "REQUIRED_CASES",
    "load_corpus",
    "run_case",
    "run_corpus",
    "DEFAULT_STEP_BUDGET",
    "FuzzReport",
    "FuzzViolation",
    "describe_value",
    "iter_statement_removals",
    "run_soundness_fuzz",
    "shrink_block",
    "GeneratorConfig",
    "generate_program",
]
