"""Exit criteria for the toolkit, one test per criterion.

Each test appends a PASS/FAIL line that is printed in the terminal summary.
"""

import itertools
import json
import random
import time
from math import comb
from pathlib import Path

import pytest

from twodfa.cli import cmd_table
from twodfa.dirdet import DirDetParams, build_dirdet_automaton, enumerate_pairs
from twodfa.general import build_core, expected_length, wrap
from twodfa.oracle import brute_force_shortest, bound_violation, shortest_accepted
from twodfa.search import SearchConfig, append_log, exhaustive_search, local_search
from twodfa.simulator import run_segment

from conftest import ACCEPTANCE_LINES, BOUND_LOG, random_automaton

GOLDEN = Path(__file__).parent / "golden"

# Local search settings for criterion 9.
LOCAL_SEED = 2026
LOCAL_BUDGET = 10**6


def report(number: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")
    assert ok, detail


def test_01_dirdet_exactness():
    start = time.perf_counter()
    wrong = []
    cases = 0
    for total in range(2, 8):
        for k in range(2, total + 1):
            l = total - k  # noqa: E741
            fw = build_dirdet_automaton(DirDetParams(k, l))
            res = shortest_accepted(fw.automaton)
            cases += 1
            expected = tuple(f"a{i}" for i in range(1, comb(k + l, l + 1)))
            if res.string != expected:
                wrong.append((k, l, res.length))
    elapsed = time.perf_counter() - start
    report(
        1,
        "direction-determinate exactness (k+l <= 7)",
        not wrong and elapsed < 120,
        f"{cases} automata, mismatches {wrong}, {elapsed:.2f}s (limit 120s)",
    )


# Transcribed from the published listing for k = 4, l = 2; 2' is written -2.
TABLE_ONE = [
    (1,), (1, -2, 2), (1, -2, 3), (1, -2, 4), (1, -1, 2), (1, -1, 2, -2, 3),
    (1, -1, 2, -2, 4), (1, -1, 3), (1, -1, 3, -2, 4), (1, -1, 4), (2,), (2, -2, 3),
    (2, -2, 4), (2, -1, 3), (2, -1, 3, -2, 4), (2, -1, 4), (3,), (3, -2, 4), (3, -1, 4), (4,),
]


def test_02_table_one():
    pairs = enumerate_pairs(DirDetParams(4, 2))
    signatures = [p.signature for p in pairs]
    listing = "".join(f"{i:>2}  {p.describe()}\n" for i, p in enumerate(pairs, 1))
    golden = (GOLDEN / "pairs_k4_l2.txt").read_text()
    ok = signatures == TABLE_ONE and listing == golden
    report(2, "pair order for k=4, l=2", ok, f"{len(pairs)} pairs, golden match {listing == golden}")


def test_03_general_exactness():
    start = time.perf_counter()
    got = [shortest_accepted(wrap(build_core(n))).length for n in range(2, 7)]
    elapsed = time.perf_counter() - start
    report(
        3,
        "general family shortest lengths n=2..6",
        got == [2, 5, 11, 23, 47] and elapsed < 300,
        f"{got}, {elapsed:.2f}s (limit 300s)",
    )


def test_04_claim_exits_right():
    failures = 0
    runs = 0
    for n in range(2, 7):
        core = build_core(n)
        for p in range(1, len(core.witness) + 1):
            runs += 1
            failures += not run_segment(core.automaton, core.witness, p, n).exits_right_in(1)
    report(4, "every start on w_n exits right in state 1", failures == 0, f"{runs} runs, {failures} failures")


def test_05_claim_nothing_shorter():
    start = time.perf_counter()
    failures = 0
    runs = 0
    for n in (2, 3):
        core = build_core(n)
        for length in range(1, len(core.witness)):
            for u in itertools.product(core.alphabet, repeat=length):
                for p in range(1, length + 1):
                    runs += 1
                    failures += run_segment(core.automaton, u, p, n).exits_right_in(1)
    elapsed = time.perf_counter() - start
    report(
        5,
        "no shorter segment exits right in state 1 (n=2,3)",
        failures == 0 and elapsed < 60,
        f"{runs} runs, {failures} failures, {elapsed:.2f}s (limit 60s)",
    )


def oracle_agreement_sample(count: int = 1000, seed: int = 12345):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_automaton(rng, rng.randint(1, 3), rng.randint(1, 2))


def test_06_oracle_cross_validation():
    mismatches = []
    found = 0
    for i, a in enumerate(oracle_agreement_sample()):
        fast = shortest_accepted(a)
        slow = brute_force_shortest(a, 8)
        if fast.found and fast.length <= 8:
            found += 1
            agree = slow.found and slow.string == fast.string
        else:
            agree = not slow.found
        if not agree:
            mismatches.append(i)
    report(
        6,
        "behaviour search vs brute force on 1000 random automata",
        not mismatches,
        f"{found} with a string of length <= 8, mismatches {mismatches}",
    )


def test_07_bounds():
    checked = 0
    violations = list(BOUND_LOG["violations"])
    samples = [a for a in oracle_agreement_sample(300, seed=99)]
    samples += [build_dirdet_automaton(DirDetParams(k, t - k)).automaton for t in range(2, 8) for k in range(2, t + 1)]
    samples += [wrap(build_core(n)) for n in range(2, 7)]
    for a in samples:
        res = shortest_accepted(a)
        if res.found:
            checked += 1
            problem = bound_violation(a, res.length)
            if problem:
                violations.append(problem)
    total = BOUND_LOG["checked"]
    report(
        7,
        "found lengths within C(2n,n)-1, and C(n,n//2)-1 when direction-determinate",
        not violations,
        f"{total} lengths checked this session so far, {len(violations)} violations",
    )


def test_08_exhaustive_two_states():
    res = exhaustive_search(SearchConfig(2, 2, mode="exhaustive", budget=10**7))
    report(
        8,
        "exhaustive search n=2, s=2",
        res.exhausted and res.best_length == 2,
        f"exhausted={res.exhausted}, best_length={res.best_length}, evaluated={res.evaluated}",
    )


def test_09_local_search_three_states(tmp_path):
    warm = wrap(build_core(3))
    cfg = SearchConfig(3, 4, mode="local", budget=LOCAL_BUDGET, seed=LOCAL_SEED, initial=warm)
    start = time.perf_counter()
    res = local_search(cfg)
    elapsed = time.perf_counter() - start
    log = tmp_path / "search-log.jsonl"
    append_log(log, cfg, res)
    logged = json.loads(log.read_text())
    verified = brute_force_shortest(res.best, res.best_length).length if res.best_length <= 10 else None
    ok = res.best_length >= 5 and logged["best_length"] == res.best_length
    ok = ok and (verified is None or verified == res.best_length)
    report(
        9,
        "local search n=3 from the general family",
        ok,
        f"achieved {res.best_length} (floor 5, stretch target 6), seed {LOCAL_SEED}, "
        f"{res.evaluated} evaluations, brute-force check {verified}, {elapsed:.1f}s",
    )


def test_10_table_golden():
    text = cmd_table(6)
    golden = (GOLDEN / "table6.txt").read_text()
    rows = [line.split() for line in text.splitlines()[1:]]
    formula_ok = rows == [
        [str(n), str(comb(n, n // 2) - 1), str(expected_length(n)), str(comb(2 * n, n + 1) - 1)]
        for n in range(2, 7)
    ]
    report(10, "bounds table n=2..6", text == golden and formula_ok, f"golden match {text == golden}")
