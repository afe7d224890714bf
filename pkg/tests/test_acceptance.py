"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
Expected values are pinned from independent oracles: direct exponentiation,
a divisor-scan GCD, and the prefix-sum formula q_k = sum(a_i * x**i).
"""

import time

import pytest

from minibabel import (
    VInt,
    call,
    check_program,
    evaluate,
    eval_program,
    format_program,
    parse_program,
    render_value,
    to_value,
)
from minibabel.cli import EXIT_ILLFORMED, EXIT_OK, main
from minibabel.conformance import (
    GeneratorConfig,
    generate_program,
    load_corpus,
    run_soundness_fuzz,
)
from minibabel.conformance.corpus import PROGRAMS_DIR

from helpers import (
    TERMINATING_LOOP_SOURCES,
    check_block_concatenation,
    check_env_split,
    check_nested_env_isolation,
    check_while_unrolling,
    outcome_description,
)

CORPUS = {case.name: case for case in load_corpus()}

MILLISECOND = 1e-3


def passed(number: int, name: str) -> None:
    print(f"ACCEPTANCE {number:02d} {name}: PASS")


def best_time(fn, repeats: int = 5) -> float:
    fn()  # warm-up
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def test_01_scope_triple():
    expected = {
        "scope-triple-left": "4",
        "scope-triple-middle": "8",
        "scope-triple-right": "4",
    }
    for name, want in expected.items():
        block = parse_program(CORPUS[name].source)
        assert render_value(evaluate(block)) == want, name
        assert best_time(lambda: evaluate(block)) < MILLISECOND, name
    passed(1, "scope-triple evaluates to 4, 8, 4")


def test_02_eighth_power_encodings():
    for name in ("power8-val", "power8-shadow", "power8-assign"):
        fn = evaluate(parse_program(CORPUS[name].source))
        assert call(fn, VInt(2)) == VInt(256), name
        assert call(fn, VInt(3)) == VInt(6561), name
        assert best_time(lambda: call(fn, VInt(2))) < MILLISECOND, name
    passed(2, "x^8 encodings give 256 at 2 and 6561 at 3")


def test_03_closure_snapshot():
    fn = evaluate(parse_program(CORPUS["closure-snapshot"].source))
    result = call(fn, VInt(2))
    assert result == VInt(64)
    assert result != VInt(256)
    passed(3, "captured closure sees the old binding (x^6, not x^8)")


def oracle_gcd(a: int, b: int) -> int:
    best = 0
    for d in range(1, max(a, b) + 1):
        if a % d == 0 and b % d == 0:
            best = d
    return best


def test_04_gcd_against_divisor_scan():
    fn = evaluate(parse_program(CORPUS["gcd"].source))
    start = time.perf_counter()
    for a in range(21):
        for b in range(21):
            if a == 0 and b == 0:
                continue
            want = b if a == 0 else oracle_gcd(a, b)
            assert call(fn, VInt(a), VInt(b)) == VInt(want), (a, b)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    passed(4, "gcd agrees with the divisor-scan oracle on 0..20 squared")


def test_05_block_value_sequence():
    value = evaluate(parse_program("begin yield 1; yield 2; 3 end"))
    assert render_value(value) == "[1, 2, 3]"
    passed(5, "yielding block renders [1, 2, 3]")


def test_06_error_semantics(capsys):
    path = str(PROGRAMS_DIR / "illformed_mixed_blocks.mb17")
    assert main(["run", path]) == EXIT_ILLFORMED  # static gate
    assert main(["run", "--no-check", path]) == EXIT_ILLFORMED  # dynamic
    sibling = str(PROGRAMS_DIR / "nested_vals_product.mb17")
    assert main(["run", sibling]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.endswith("2\n")
    passed(6, "illformed program fails statically and dynamically; sibling gives 2")


def oracle_prefix_sums(coeffs, x):
    return [sum(a * x**i for i, a in enumerate(coeffs[: k + 1]))
            for k in range(len(coeffs))]


def test_07_polynomial_prefix_sums():
    fn = evaluate(parse_program(CORPUS["poly-prefix-sums"].source))
    assert oracle_prefix_sums([1, 2, 3], 2) == [1, 5, 17]
    assert render_value(call(fn, to_value([1, 2, 3]), VInt(2))) == "[1, 5, 17]"
    for x in (0, 1, 7, 19):
        assert render_value(call(fn, to_value([]), VInt(x))) == "[]"
    single = call(fn, to_value([3]), VInt(5))
    assert single == VInt(3)
    assert render_value(single) == "3"
    passed(7, "prefix sums match the direct q_k formula, with single-yield collapse")


def test_08_soundness_fuzz_10000():
    start = time.perf_counter()
    report = run_soundness_fuzz(GeneratorConfig(max_depth=6, seed=0), 10_000)
    elapsed = time.perf_counter() - start
    assert report.iterations == 10_000
    assert report.ok, report.violations
    assert report.wellformed > 0
    assert elapsed < 60.0, f"took {elapsed:.1f}s"
    passed(8, f"10,000 programs fuzzed in {elapsed:.1f}s with zero soundness violations")


def test_09_property_suites():
    # determinism
    blocks = [parse_program(case.source) for case in CORPUS.values()]
    for block in blocks:
        assert outcome_description(block) == outcome_description(block)
    # env-split, purity, isolation, concatenation on generated programs
    from minibabel import EMPTY_ENV, Evaluator, Store

    checked = 0
    for seed in range(400):
        block = generate_program(GeneratorConfig(max_depth=5, seed=seed))
        if not check_program(block).wellformed:
            continue
        checked += 1
        evaluator = Evaluator(check_purity=True, max_steps=20_000)
        env = EMPTY_ENV
        store = Store()
        try:
            for stmt in block.statements:
                env, _ = evaluator.eval_statement(env, store, stmt)
                check_env_split(env)
        except AssertionError:
            raise
        except Exception:
            pass
        try:
            check_nested_env_isolation(block)
            check_block_concatenation(block)
        except AssertionError:
            raise
        except Exception:
            pass
    assert checked > 50
    # freeze idempotence and lookup preservation
    from minibabel import bind, freeze, lookup

    store = Store()
    env = bind(bind(EMPTY_ENV, store, "a", VInt(1)), store, "b", VInt(2))
    frozen = freeze(env, store)
    assert freeze(frozen, store) == frozen
    for name in ("a", "b"):
        assert lookup(frozen, store, name) == lookup(env, store, name)
    # while-unrolling corpus
    assert len(TERMINATING_LOOP_SOURCES) == 20
    for source in TERMINATING_LOOP_SOURCES:
        check_while_unrolling(source)
    # alpha-renaming on the canonical programs
    pairs = [
        ("x => begin val y = x*x; val z = y*y; z*z end",
         "x => begin val u = x*x; val v = u*u; v*v end"),
        ("x => begin val x = x*x; val x = x*x; x*x end",
         "x => begin val t = x*x; val x = t*t; x*x end"),
    ]
    for original, renamed in pairs:
        fa = evaluate(parse_program(original))
        fb = evaluate(parse_program(renamed))
        assert call(fa, VInt(2)) == call(fb, VInt(2)) == VInt(256)
    passed(9, "determinism, env-split, purity, isolation, concatenation, "
              "unrolling, alpha-renaming all hold")


def test_10_parser_round_trip():
    for case in CORPUS.values():
        block = parse_program(case.source)
        assert parse_program(format_program(block)) == block, case.name
    for seed in range(1000):
        block = generate_program(GeneratorConfig(max_depth=5, seed=seed))
        assert parse_program(format_program(block)) == block, f"seed {seed}"
    passed(10, "parse -> format -> parse is the identity on corpus plus 1000 ASTs")
