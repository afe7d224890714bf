"""Golden corpus: canonical programs with expected outcomes.

The corpus lives in ``programs/`` next to a tab-separated manifest with one
record per case: name, file, kind, expected, tag.  Three kinds exist:

* ``value``: the program checks well-formed and its result renders exactly
  as ``expected``.
* ``error``: ``expected`` is ``illformed`` (rejected statically *and*
  raising dynamically) or ``typeerror`` (well-formed statically, raising
  at evaluation).
* ``probe``: the program evaluates to a function; ``expected`` has the form
  ``arg | arg | ... -> rendering`` where each arg is itself a program.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..check import check_program
from ..errors import LangError, ParseError
from ..interp import call, eval_program, evaluate
from ..parse import parse_program
from ..runtime import VFun, render_value

PROGRAMS_DIR = Path(__file__).resolve().parent / "programs"
MANIFEST_PATH = PROGRAMS_DIR / "manifest.tsv"

# One corpus case exists for every canonical program the language must
# reproduce; the manifest may carry more, but never fewer.
REQUIRED_CASES = frozenset(
    {
        "power8-val",
        "power8-shadow",
        "power8-assign",
        "scope-triple-left",
        "scope-triple-middle",
        "scope-triple-right",
        "closure-snapshot",
        "gcd",
        "yield-three",
        "illformed-mixed-blocks",
        "nested-vals-product",
        "poly-prefix-sums",
    }
)


@dataclass(frozen=True)
class CorpusCase:
    name: str
    file: str
    kind: str
    expected: str
    tag: str
    source: str


@dataclass(frozen=True)
class CaseResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CorpusReport:
    results: tuple[CaseResult, ...]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def failures(self) -> list[CaseResult]:
        return [result for result in self.results if not result.passed]


def load_corpus() -> list[CorpusCase]:
    cases: list[CorpusCase] = []
    for raw in MANIFEST_PATH.read_text(encoding="utf-8").splitlines():
        line = raw.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        name, file, kind, expected, tag = line.split("\t")
        source = (PROGRAMS_DIR / file).read_text(encoding="utf-8")
        cases.append(CorpusCase(name, file, kind, expected, tag, source))
    return cases


def run_corpus() -> CorpusReport:
    """Run every case through parse, check, evaluate, and compare."""
    return CorpusReport(tuple(run_case(case) for case in load_corpus()))


def run_case(case: CorpusCase) -> CaseResult:
    try:
        return _run_case(case)
    except LangError as exc:
        return CaseResult(case.name, False, f"unexpected error: {exc.render()}")


def _run_case(case: CorpusCase) -> CaseResult:
    try:
        block = parse_program(case.source)
    except ParseError as exc:
        return CaseResult(case.name, False, f"did not parse: {exc.render()}")
    report = check_program(block)

    if case.kind == "error":
        outcome = eval_program(block)
        if outcome.ok:
            return CaseResult(
                case.name, False,
                f"expected {case.expected}, evaluated to {render_value(outcome.value)}",
            )
        if outcome.error_kind != case.expected:
            return CaseResult(
                case.name, False,
                f"expected {case.expected}, got {outcome.error.render()}",
            )
        want_static_reject = case.expected == "illformed"
        if report.wellformed == want_static_reject:
            return CaseResult(
                case.name, False,
                f"checker verdict {report.render()!r} disagrees with expected {case.expected}",
            )
        return CaseResult(case.name, True)

    if not report.wellformed:
        return CaseResult(case.name, False, f"checker rejected it: {report.render()}")

    if case.kind == "value":
        rendering = render_value(evaluate(block))
        if rendering != case.expected:
            return CaseResult(
                case.name, False, f"expected {case.expected}, got {rendering}"
            )
        return CaseResult(case.name, True)

    if case.kind == "probe":
        args_text, want = case.expected.split(" -> ", 1)
        arg_values = [
            evaluate(parse_program(part.strip()))
            for part in args_text.split("|")
        ]
        fn = evaluate(block)
        if not isinstance(fn, VFun):
            return CaseResult(
                case.name, False, f"expected a function, got {render_value(fn)}"
            )
        rendering = render_value(call(fn, *arg_values))
        if rendering != want:
            return CaseResult(case.name, False, f"expected {want}, got {rendering}")
        return CaseResult(case.name, True)

    return CaseResult(case.name, False, f"unknown case kind {case.kind!r}")
