"""The inductive family of n-state 2DFA with shortest strings of length 3*2^(n-2) - 1.

The core automaton for n+1 states runs over arrowed copies of the n-state
alphabet plus a separator ``#``.  Arrowed tokens are spelled ``>x`` and
``<x`` for a base token ``x``, so nesting gives tokens like ``><a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automaton import LEND, L, R, TwoDFA
from .dirdet import FamilyWitness

SEPARATOR = "#"


@dataclass(frozen=True)
class CoreAutomaton:
    """A 2DFA with no end-marker transitions, whose initial/accepting fields are placeholders."""

    automaton: TwoDFA
    n: int
    witness: tuple[str, ...]

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.automaton.alphabet


def expected_length(n: int) -> int:
    return 3 * 2 ** (n - 2) - 1


def right(tok: str) -> str:
    return ">" + tok


def left(tok: str) -> str:
    return "<" + tok


def build_core(n: int) -> CoreAutomaton:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    alphabet: tuple[str, ...] = ("a", "b")
    delta = {
        (2, "a"): (2, R),
        (2, "b"): (1, L),
        (1, "a"): (1, R),
        (1, "b"): (1, R),
    }
    witness: tuple[str, ...] = ("a", "b")
    for m in range(2, n):
        # m -> m + 1: state m + 1 follows the arrows, old states read through them
        top = m + 1
        nxt = {}
        for x in alphabet:
            nxt[top, right(x)] = (top, R)
            nxt[top, left(x)] = (top, L)
        for (q, x), move in delta.items():
            nxt[q, right(x)] = move
            nxt[q, left(x)] = move
        nxt[top, SEPARATOR] = (m, L)
        nxt[1, SEPARATOR] = (m, R)
        alphabet = (*map(right, alphabet), *map(left, alphabet), SEPARATOR)
        witness = (*map(right, witness), SEPARATOR, *map(left, witness))
        delta = nxt
    core = TwoDFA(alphabet, n, n, frozenset(), delta)
    return CoreAutomaton(core, n, witness)


def wrap(core: CoreAutomaton) -> TwoDFA:
    """Start in state n, accept in state 1, single move right off LEND in state n."""
    a = core.automaton
    n = core.n
    delta = dict(a.transitions)
    delta[n, LEND] = (n, R)
    return TwoDFA(a.alphabet, n, n, frozenset({1}), delta, a.aliases)


def strip_arrows(w: Sequence[str]) -> tuple[str, ...]:
    out = []
    for tok in w:
        if tok == SEPARATOR:
            raise ValueError("separator '#' has no arrow to strip")
        if len(tok) < 2 or tok[0] not in "<>":
            raise ValueError(f"token {tok!r} carries no arrow")
        out.append(tok[1:])
    return tuple(out)


def family_witness(n: int) -> FamilyWitness:
    core = build_core(n)
    return FamilyWitness(wrap(core), core.witness, expected_length(n))
