import functools
import random

import pytest

import twodfa
from twodfa import oracle
from twodfa.automaton import LEND, REND, Direction, TwoDFA

# Every shortest length computed during the session is checked against the
# known upper bounds; see test_acceptance.py (criterion 7) and sessionfinish.
BOUND_LOG = {"checked": 0, "violations": []}


def pytest_configure(config):
    original = oracle.shortest_accepted

    @functools.wraps(original)
    def recorded(a):
        res = original(a)
        if res.found:
            BOUND_LOG["checked"] += 1
            problem = oracle.bound_violation(a, res.length)
            if problem:
                BOUND_LOG["violations"].append(problem)
        return res

    oracle.shortest_accepted = recorded
    twodfa.shortest_accepted = recorded


def pytest_sessionfinish(session, exitstatus):
    if BOUND_LOG["violations"]:
        print("\nbound violations:", *BOUND_LOG["violations"], sep="\n  ")
        session.exitstatus = 1


A2_DOC = """{
 "states": 2,
 "initial": 2,
 "accepting": [1],
 "alphabet": ["a", "b"],
 "transitions": [
  {"state": 1, "symbol": "a", "target": 1, "move": "R"},
  {"state": 1, "symbol": "b", "target": 1, "move": "R"},
  {"state": 2, "symbol": "a", "target": 2, "move": "R"},
  {"state": 2, "symbol": "b", "target": 1, "move": "L"}
 ]
}
"""


@pytest.fixture
def a2_doc():
    return A2_DOC


def random_automaton(rng: random.Random, n: int, s: int, undefined: float = 0.3) -> TwoDFA:
    """Random 2DFA; the initial LEND move is rightward most of the time."""
    alphabet = tuple("abcdefgh"[:s])
    delta = {}
    for q in range(1, n + 1):
        for sym in (LEND, REND, *alphabet):
            if rng.random() >= undefined:
                delta[q, sym] = (rng.randint(1, n), rng.choice(list(Direction)))
    initial = rng.randint(1, n)
    if rng.random() < 0.9:
        delta[initial, LEND] = (rng.randint(1, n), Direction.RIGHT)
    accepting = frozenset(q for q in range(1, n + 1) if rng.random() < 0.4)
    return TwoDFA(alphabet, n, initial, accepting, delta)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
    terminalreporter.write_line(
        f"bound checks: {BOUND_LOG['checked']} shortest lengths, "
        f"{len(BOUND_LOG['violations'])} violations"
    )
