import itertools
import random

import pytest

from twodfa.automaton import LEND, REND, Direction
from twodfa.general import (
    SEPARATOR,
    build_core,
    expected_length,
    family_witness,
    strip_arrows,
    wrap,
)
from twodfa.oracle import shortest_accepted
from twodfa.simulator import run_full, run_segment

R, L = Direction.RIGHT, Direction.LEFT


def test_base_core():
    core = build_core(2)
    assert core.alphabet == ("a", "b")
    assert core.witness == ("a", "b")
    assert dict(core.automaton.transitions) == {
        (2, "a"): (2, R),
        (2, "b"): (1, L),
        (1, "a"): (1, R),
        (1, "b"): (1, R),
    }


def test_core_three():
    core = build_core(3)
    assert core.witness == (">a", ">b", "#", "<a", "<b")
    a = core.automaton
    assert a.delta(3, ">a") == (3, R) and a.delta(3, "<b") == (3, L)
    assert a.delta(3, "#") == (2, L) and a.delta(1, "#") == (2, R)
    assert a.delta(2, ">b") == a.delta(2, "<b") == (1, L)
    assert a.delta(2, "#") is None


def test_core_five_sizes():
    core = build_core(5)
    assert len(core.witness) == len(core.alphabet) == 23


def test_nested_tokens():
    assert "><a" in build_core(4).alphabet
    assert ">#" in build_core(4).alphabet


@pytest.mark.parametrize("n", range(2, 9))
def test_length_law(n):
    core = build_core(n)
    assert len(core.witness) == len(core.alphabet) == 3 * 2 ** (n - 2) - 1 == expected_length(n)
    assert len(set(core.alphabet)) == len(core.alphabet)
    assert not any(sym in (LEND, REND) for _, sym in core.automaton.transitions)


def test_build_core_guard():
    with pytest.raises(ValueError):
        build_core(1)


def test_wrap():
    a = wrap(build_core(3))
    assert a.initial == 3 and a.accepting == {1}
    assert a.delta(3, LEND) == (3, R)
    assert not any(sym == REND for _, sym in a.transitions)
    assert set(build_core(3).automaton.transitions.items()) <= set(a.transitions.items())


def test_wrapped_a2_language_edges():
    a = wrap(build_core(2))
    assert run_full(a, ["a", "b"]).accepted
    assert not run_full(a, []).accepted


def test_wrapped_four_shortest():
    assert shortest_accepted(wrap(build_core(4))).length == 11


def test_strip_arrows():
    assert strip_arrows([">a", "<b"]) == ("a", "b")
    assert strip_arrows([]) == ()
    with pytest.raises(ValueError):
        strip_arrows([">a", SEPARATOR])


@pytest.mark.parametrize("n", range(2, 7))
def test_strip_right_copy_gives_previous_witness(n):
    nxt = build_core(n + 1)
    half = nxt.witness[: len(nxt.witness) // 2]
    assert strip_arrows(half) == build_core(n).witness


@pytest.mark.parametrize("n", range(2, 7))
def test_every_start_exits_right_in_state_one(n):
    core = build_core(n)
    for p in range(1, len(core.witness) + 1):
        assert run_segment(core.automaton, core.witness, p, n).exits_right_in(1)


@pytest.mark.parametrize("n", [2, 3])
def test_no_shorter_segment_exits_in_state_one(n):
    core = build_core(n)
    for length in range(1, len(core.witness)):
        for u in itertools.product(core.alphabet, repeat=length):
            for p in range(1, length + 1):
                assert not run_segment(core.automaton, u, p, n).exits_right_in(1)


@pytest.mark.parametrize("n", range(2, 7))
def test_wrapped_shortest_length(n):
    assert shortest_accepted(wrap(build_core(n))).length == expected_length(n)


@pytest.mark.parametrize("n", range(2, 6))
def test_arrowed_copies_simulate_smaller_core(n):
    small, big = build_core(n), build_core(n + 1)
    rng = random.Random(n)
    for _ in range(20):
        w = [(">" if rng.random() < 0.5 else "<") + x for x in small.witness]
        assert strip_arrows(w) == small.witness
        for p in range(1, len(w) + 1):
            assert run_segment(big.automaton, w, p, n) == run_segment(
                small.automaton, small.witness, p, n
            )


def test_family_witness_is_accepted():
    fw = family_witness(4)
    assert fw.expected_length == 11
    assert run_full(fw.automaton, fw.witness).accepted
    assert fw.sidecar() == {"witness": " ".join(fw.witness), "expected_length": 11}
