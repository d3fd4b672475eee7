"""Direction-determinate automata whose shortest accepted string has length C(k+l, l+1) - 1.

Right-entered states are ``1..k``; left-entered states ``1'..l'`` get the ids
``k+1..k+l``.  Each symbol ``a_i`` of the alphabet is tied to the i-th pair
``(P, R)`` in the order below, and the automaton zig-zags between neighbouring
symbols according to consecutive pairs.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from math import comb

from .automaton import LEND, DirectionPartition, L, R, TwoDFA


@dataclass(frozen=True)
class DirDetParams:
    k: int
    l: int  # noqa: E741

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if self.l < 0:
            raise ValueError(f"l must be non-negative, got {self.l}")

    @property
    def pair_count(self) -> int:
        return comb(self.k + self.l, self.l + 1)


@dataclass(frozen=True)
class PairPR:
    """``P`` holds left-state indices (the primed numbers), ``R`` right states."""

    P: tuple[int, ...]
    R: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.R) != len(self.P) + 1:
            raise ValueError("|R| must equal |P| + 1")
        for seq in (self.P, self.R):
            if any(x >= y for x, y in zip(seq, seq[1:])):
                raise ValueError("P and R must be strictly increasing")

    @property
    def signature(self) -> tuple[int, ...]:
        out = [self.R[0]]
        for p, r in zip(self.P, self.R[1:]):
            out += [-p, r]
        return tuple(out)

    def describe(self) -> str:
        ps = ", ".join(f"{p}'" for p in self.P)
        rs = ", ".join(str(r) for r in self.R)
        sig = ",".join(str(x) if x > 0 else f"-{-x}'" for x in self.signature)
        return f"{{{ps}}}, {{{rs}}}  ({sig})"


def compare_pairs(x: PairPR, y: PairPR) -> int:
    """-1, 0 or 1 by lexicographic order of signatures; a prefix comes first."""
    a, b = x.signature, y.signature
    return (a > b) - (a < b)


def enumerate_pairs(params: DirDetParams) -> list[PairPR]:
    pairs = [
        PairPR(P, R)
        for m in range(min(params.l, params.k - 1) + 1)
        for P in itertools.combinations(range(1, params.l + 1), m)
        for R in itertools.combinations(range(1, params.k + 1), m + 1)
    ]
    return sorted(pairs, key=functools.cmp_to_key(compare_pairs))


@dataclass(frozen=True)
class FamilyWitness:
    automaton: TwoDFA
    witness: tuple[str, ...]
    expected_length: int
    partition: DirectionPartition | None = None

    def sidecar(self) -> dict:
        return {"witness": " ".join(self.witness), "expected_length": self.expected_length}


def build_dirdet_automaton(params: DirDetParams) -> FamilyWitness:
    k, l = params.k, params.l  # noqa: E741
    pairs = enumerate_pairs(params)
    N = len(pairs)
    alphabet = tuple(f"a{i}" for i in range(1, N))

    def minus(p: int) -> int:
        return k + p

    delta = {(1, LEND): (pairs[0].R[0], R)}
    for i in range(1, N):
        sym = alphabet[i - 1]
        cur, nxt = pairs[i - 1], pairs[i]
        for r, p in zip(cur.R, cur.P):
            delta[r, sym] = (minus(p), L)
        delta[cur.R[-1], sym] = (nxt.R[0], R)
        for p, r in zip(nxt.P, nxt.R[1:]):
            delta[minus(p), sym] = (r, R)

    automaton = TwoDFA(
        alphabet=alphabet,
        states=k + l,
        initial=1,
        accepting=frozenset({pairs[-1].R[-1]}),
        transitions=delta,
        aliases={minus(p): f"{p}'" for p in range(1, l + 1)},
    )
    partition = DirectionPartition(
        frozenset(range(1, k + 1)), frozenset(range(k + 1, k + l + 1)), frozenset()
    )
    return FamilyWitness(automaton, alphabet, N - 1, partition)


def best_split(n: int) -> DirDetParams:
    """The (k, l) with k + l = n giving the longest witness."""
    if n < 2:
        raise ValueError("need at least 2 states")
    return max(
        (DirDetParams(k, n - k) for k in range(2, n + 1)),
        key=lambda p: (p.pair_count, -p.k),
    )
