"""Shortest accepted strings of a 2DFA.

The main method is a breadth-first search over prefix behaviours.  For a
prefix ``LEND u`` the behaviour records where the head first leaves the prefix
to the right, both for the initial run and for each re-entry from the right
at the last cell.  Behaviours compose symbol by symbol and decide acceptance,
so the reachable behaviours act as states of an equivalent one-way automaton.

``brute_force_shortest`` is the independent check: plain enumeration plus
full simulation.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from math import comb

from .automaton import LEND, REND, TwoDFA, classify_direction, DirectionPartition, ensure_valid
from .simulator import run_full

BOTTOM = 0


@dataclass(frozen=True)
class Behavior:
    """``cross[q - 1]`` is the exit state after re-entering at the last cell in ``q``.

    ``BOTTOM`` (0) stands for reject, loop or a fall off the tape.
    """

    init: int
    cross: tuple[int, ...]


@dataclass(frozen=True)
class ShortestResult:
    found: bool
    string: tuple[str, ...] = ()
    length: int | None = None
    behaviors_explored: int = 0


def _exit_through(a: TwoDFA, cross: tuple[int, ...], state: int, symbol: str) -> int:
    seen = set()
    p = state
    while p not in seen:
        seen.add(p)
        move = a.transitions.get((p, symbol))
        if move is None:
            return BOTTOM
        r, d = move
        if d > 0:
            return r
        p = cross[r - 1]
        if p == BOTTOM:
            return BOTTOM
    return BOTTOM


def initial_behavior(a: TwoDFA) -> Behavior:
    ensure_valid(a)
    cross = []
    for q in range(1, a.states + 1):
        move = a.transitions.get((q, LEND))
        cross.append(move[0] if move is not None and move[1] > 0 else BOTTOM)
    return Behavior(cross[a.initial - 1], tuple(cross))


def extend_behavior(a: TwoDFA, b: Behavior, s: str) -> Behavior:
    if s not in a.alphabet:
        raise ValueError(f"symbol {s!r} not in alphabet")
    cross = tuple(_exit_through(a, b.cross, q, s) for q in range(1, a.states + 1))
    init = BOTTOM if b.init == BOTTOM else cross[b.init - 1]
    return Behavior(init, cross)


def accepts_here(a: TwoDFA, b: Behavior) -> bool:
    """Whether the string summarised by ``b`` is accepted once REND is appended."""
    p = b.init
    seen = set()
    while p != BOTTOM and p not in seen:
        if p in a.accepting:
            return True
        seen.add(p)
        move = a.transitions.get((p, REND))
        if move is None or move[1] > 0:
            return False
        p = b.cross[move[0] - 1]
    return False


def shortest_accepted(a: TwoDFA) -> ShortestResult:
    """Shortest accepted string, least in alphabet order among equally short ones."""
    ensure_valid(a)
    root = initial_behavior(a)
    if accepts_here(a, root):
        return ShortestResult(True, (), 0, 1)
    parent: dict[Behavior, tuple[Behavior, str] | None] = {root: None}
    queue = deque([root])
    while queue:
        b = queue.popleft()
        if b.init == BOTTOM:
            # nothing reached from here can ever be accepted
            continue
        for s in a.alphabet:
            nb = extend_behavior(a, b, s)
            if nb in parent:
                continue
            parent[nb] = (b, s)
            if accepts_here(a, nb):
                string = _unwind(parent, nb)
                return ShortestResult(True, string, len(string), len(parent))
            queue.append(nb)
    return ShortestResult(False, (), None, len(parent))


def _unwind(parent: dict, b: Behavior) -> tuple[str, ...]:
    out = []
    while parent[b] is not None:
        b, s = parent[b]
        out.append(s)
    return tuple(reversed(out))


def brute_force_shortest(a: TwoDFA, max_len: int) -> ShortestResult:
    """Try every string up to ``max_len`` in length-then-alphabet order."""
    ensure_valid(a)
    tried = 0
    for length in range(max_len + 1):
        for w in itertools.product(a.alphabet, repeat=length):
            tried += 1
            if run_full(a, w).accepted:
                return ShortestResult(True, w, length, tried)
    return ShortestResult(False, (), None, tried)


def general_bound(n: int) -> int:
    return comb(2 * n, n) - 1


def dirdet_bound(n: int) -> int:
    return comb(n, n // 2) - 1


def bound_violation(a: TwoDFA, length: int) -> str | None:
    """Describe how ``length`` breaks the known upper bounds for ``a``, if it does."""
    n = a.states
    if length > general_bound(n):
        return f"length {length} exceeds C(2n, n) - 1 = {general_bound(n)} for n = {n}"
    if isinstance(classify_direction(a), DirectionPartition) and length > dirdet_bound(n):
        return (
            f"length {length} exceeds C(n, n//2) - 1 = {dirdet_bound(n)} "
            f"for direction-determinate n = {n}"
        )
    return None
