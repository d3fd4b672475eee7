"""Exact execution of a 2DFA on a full tape and on end-marker-free segments."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .automaton import LEND, REND, Direction, TwoDFA, ensure_valid


@dataclass(frozen=True)
class Configuration:
    state: int
    position: int


class RunKind(enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    LOOP = "loop"


@dataclass(frozen=True)
class RunOutcome:
    kind: RunKind
    at: Configuration | None = None
    trace: tuple[Configuration, ...] | None = None

    @property
    def accepted(self) -> bool:
        return self.kind is RunKind.ACCEPT


class SegmentKind(enum.Enum):
    EXIT_RIGHT = "exit-right"
    EXIT_LEFT = "exit-left"
    REJECT = "reject"
    LOOP = "loop"


@dataclass(frozen=True)
class SegmentOutcome:
    kind: SegmentKind
    state: int | None = None
    steps: int = 0

    def exits_right_in(self, state: int) -> bool:
        return self.kind is SegmentKind.EXIT_RIGHT and self.state == state


def _check_tokens(a: TwoDFA, w: Sequence[str]) -> None:
    known = set(a.alphabet)
    for tok in w:
        if tok not in known:
            raise ValueError(f"token {tok!r} not in alphabet")


def run_full(a: TwoDFA, w: Sequence[str], capture_trace: bool = False) -> RunOutcome:
    """Run ``a`` on the tape LEND w REND from the initial state at position 0.

    Acceptance is decided on arrival at the right end-marker, before any
    transition there is consulted.  Undefined transitions and moves off either
    end of the tape reject.
    """
    ensure_valid(a)
    _check_tokens(a, w)
    tape = (LEND, *w, REND)
    last = len(tape) - 1
    delta = a.transitions
    accepting = a.accepting
    state, pos = a.initial, 0
    seen: set[tuple[int, int]] = set()
    trace: list[Configuration] | None = [] if capture_trace else None
    bound = a.states * len(tape)

    def done(kind: RunKind, at: Configuration | None = None) -> RunOutcome:
        return RunOutcome(kind, at, tuple(trace) if trace is not None else None)

    while True:
        if (state, pos) in seen or len(seen) > bound:
            return done(RunKind.LOOP)
        seen.add((state, pos))
        if trace is not None:
            trace.append(Configuration(state, pos))
        if pos == last and state in accepting:
            return done(RunKind.ACCEPT)
        move = delta.get((state, tape[pos]))
        if move is None:
            return done(RunKind.REJECT, Configuration(state, pos))
        target, d = move
        if not 0 <= pos + d <= last:
            return done(RunKind.REJECT, Configuration(state, pos))
        state, pos = target, pos + d


def accepts(a: TwoDFA, w: Sequence[str]) -> bool:
    return run_full(a, w).accepted


def run_segment(a: TwoDFA, u: Sequence[str], start_pos: int, start_state: int) -> SegmentOutcome:
    """Run ``a`` on ``u`` alone, starting at 1-based ``start_pos``.

    Ends when the head steps off either side of ``u``; the reported state is
    the one entered by that final move.
    """
    ensure_valid(a)
    if not u:
        raise ValueError("segment must be non-empty")
    if not 1 <= start_pos <= len(u):
        raise ValueError(f"start position {start_pos} outside 1..{len(u)}")
    _check_tokens(a, u)
    delta = a.transitions
    state, pos = start_state, start_pos
    seen: set[tuple[int, int]] = set()
    steps = 0
    while True:
        if (state, pos) in seen:
            return SegmentOutcome(SegmentKind.LOOP, None, steps)
        seen.add((state, pos))
        move = delta.get((state, u[pos - 1]))
        if move is None:
            return SegmentOutcome(SegmentKind.REJECT, None, steps)
        state, pos = move[0], pos + move[1]
        steps += 1
        if pos == 0:
            return SegmentOutcome(SegmentKind.EXIT_LEFT, state, steps)
        if pos == len(u) + 1:
            return SegmentOutcome(SegmentKind.EXIT_RIGHT, state, steps)


def render_trace(
    w: Sequence[str], trace: Sequence[Configuration], names: dict[int, str] | None = None
) -> str:
    """Draw a trace as text: a header of tape cells, then one row per step.

    Each row shows the current state under the cell the head is reading.
    """
    if not trace:
        return ""
    names = names or {}
    cells = ["|-", *w, "-|"]
    labels = [names.get(c.state, str(c.state)) for c in trace]
    widths = [len(tok) for tok in cells]
    for c, label in zip(trace, labels):
        if not 0 <= c.position < len(cells):
            raise ValueError(f"trace position {c.position} outside tape")
        widths[c.position] = max(widths[c.position], len(label))
    lines = [" ".join(tok.ljust(wd) for tok, wd in zip(cells, widths)).rstrip()]
    for c, label in zip(trace, labels):
        row = [" " * wd for wd in widths]
        row[c.position] = label.ljust(widths[c.position])
        lines.append(" ".join(row).rstrip())
    return "\n".join(lines) + "\n"


__all__ = [
    "Configuration",
    "Direction",
    "RunKind",
    "RunOutcome",
    "SegmentKind",
    "SegmentOutcome",
    "accepts",
    "render_trace",
    "run_full",
    "run_segment",
]
