"""Search for n-state 2DFA with long shortest accepted strings.

Candidates are handled as flat tables rather than :class:`TwoDFA` objects.
A table has ``n`` rows and ``s + 2`` columns (LEND, REND, then the ``s``
symbols); each cell holds 0 for "undefined" or a move code
``2 * (target - 1) + (1 if right else 0) + 1``.  Accepting sets are bitmasks
with bit ``q - 1`` standing for state ``q``.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
import random
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from . import oracle
from .automaton import LEND, REND, Direction, TwoDFA, ensure_valid, to_document

log = logging.getLogger(__name__)

MAX_EXHAUSTIVE_CELLS = 12


class InfeasibleSearchError(ValueError):
    pass


@dataclass(frozen=True)
class Table:
    n: int
    s: int
    initial: int
    accepting: int
    cells: tuple[int, ...]

    @property
    def width(self) -> int:
        return self.s + 2

    def cell(self, state: int, column: int) -> int:
        return self.cells[(state - 1) * self.width + column]


def encode_move(target: int, d: Direction) -> int:
    return 2 * (target - 1) + (1 if d > 0 else 0) + 1


def decode_move(code: int) -> tuple[int, Direction]:
    return (code - 1) // 2 + 1, Direction.RIGHT if (code - 1) & 1 else Direction.LEFT


def table_of(a: TwoDFA, s: int | None = None) -> Table:
    """Flatten ``a``; extra columns beyond its alphabet are left undefined."""
    ensure_valid(a)
    s = len(a.alphabet) if s is None else s
    if s < len(a.alphabet):
        raise ValueError(f"cannot fit {len(a.alphabet)} symbols into {s} columns")
    columns = {sym: c for c, sym in enumerate((LEND, REND, *a.alphabet))}
    cells = [0] * (a.states * (s + 2))
    for (q, sym), (r, d) in a.transitions.items():
        cells[(q - 1) * (s + 2) + columns[sym]] = encode_move(r, d)
    fmask = sum(1 << (q - 1) for q in a.accepting)
    return Table(a.states, s, a.initial, fmask, tuple(cells))


def automaton_of(t: Table, names: Sequence[str] | None = None) -> TwoDFA:
    names = tuple(names) if names is not None else tuple(f"s{i}" for i in range(1, t.s + 1))
    if len(names) != t.s:
        raise ValueError("need one name per symbol column")
    symbols = (LEND, REND, *names)
    delta = {}
    for q in range(1, t.n + 1):
        for c, sym in enumerate(symbols):
            code = t.cell(q, c)
            if code:
                delta[q, sym] = decode_move(code)
    accepting = frozenset(q for q in range(1, t.n + 1) if t.accepting >> (q - 1) & 1)
    return TwoDFA(names, t.n, t.initial, accepting, delta)


def table_length(t: Table) -> int | None:
    """Shortest accepted length of a flat table, or None for the empty language.

    Same breadth-first search over prefix behaviours as
    :func:`oracle.shortest_accepted`, specialised to integer tables.
    """
    n, w, cells, fmask = t.n, t.width, t.cells, t.accepting
    tgt = [(v - 1) // 2 + 1 if v else 0 for v in cells]
    right = [bool(v) and (v - 1) & 1 == 1 for v in cells]
    cross0 = tuple(tgt[q * w] if right[q * w] else 0 for q in range(n))

    def accepted(init: int, cross: tuple[int, ...]) -> bool:
        p, seen = init, 0
        while p and not seen >> p & 1:
            if fmask >> (p - 1) & 1:
                return True
            seen |= 1 << p
            i = (p - 1) * w + 1
            if not cells[i] or right[i]:
                return False
            p = cross[tgt[i] - 1]
        return False

    init = cross0[t.initial - 1]
    if not init:
        return None
    if accepted(init, cross0):
        return 0
    seen = {(init, cross0)}
    frontier = [(init, cross0)]
    depth = 0
    states = range(1, n + 1)
    columns = range(2, w)
    while frontier:
        depth += 1
        nxt = []
        for init, cross in frontier:
            for c in columns:
                out = []
                for q in states:
                    p, visited, exit_state = q, 0, 0
                    while not visited >> p & 1:
                        visited |= 1 << p
                        i = (p - 1) * w + c
                        if not cells[i]:
                            break
                        if right[i]:
                            exit_state = tgt[i]
                            break
                        p = cross[tgt[i] - 1]
                        if not p:
                            break
                    out.append(exit_state)
                new_cross = tuple(out)
                new_init = new_cross[init - 1]
                if not new_init:
                    continue
                b = (new_init, new_cross)
                if b in seen:
                    continue
                seen.add(b)
                if accepted(new_init, new_cross):
                    return depth
                nxt.append(b)
        frontier = nxt
    return None


def _relabelings(n: int, initial: int) -> list[tuple[tuple[int, ...], tuple[int, ...], list[int]]]:
    """State permutations sending ``initial`` to 1, as (new id per old id, old id per new, code map)."""
    others = [q for q in range(1, n + 1) if q != initial]
    out = []
    for perm in itertools.permutations(range(2, n + 1)):
        new_of = [0] * (n + 1)
        new_of[initial] = 1
        for old, new in zip(others, perm):
            new_of[old] = new
        old_of = [0] * (n + 1)
        for old in range(1, n + 1):
            old_of[new_of[old]] = old
        codes = [0] + [
            encode_move(new_of[(v - 1) // 2 + 1], Direction.RIGHT if (v - 1) & 1 else Direction.LEFT)
            for v in range(1, 2 * n + 1)
        ]
        out.append((tuple(new_of), tuple(old_of), codes))
    return out


_RELABEL_CACHE: dict[tuple[int, int], list] = {}


def _relabelings_cached(n: int, initial: int):
    key = (n, initial)
    if key not in _RELABEL_CACHE:
        _RELABEL_CACHE[key] = _relabelings(n, initial)
    return _RELABEL_CACHE[key]


def _table_key(t: Table, with_accepting: bool = True) -> bytes:
    n, w, cells = t.n, t.width, t.cells
    best = None
    for new_of, old_of, codes in _relabelings_cached(n, t.initial):
        cols = [
            tuple(codes[cells[(old_of[q] - 1) * w + c]] for q in range(1, n + 1))
            for c in range(w)
        ]
        fm = sum(1 << (new_of[q] - 1) for q in range(1, n + 1) if t.accepting >> (q - 1) & 1)
        flat = ([fm] if with_accepting else []) + [
            x for col in (cols[0], cols[1], *sorted(cols[2:])) for x in col
        ]
        if best is None or flat < best:
            best = flat
    assert best is not None
    return bytes([n, t.s]) + b"".join(x.to_bytes(2, "big") for x in best)


def canonical_form(a: TwoDFA) -> bytes:
    """Key shared by all relabellings of ``a``'s symbols and states.

    It is the lexicographically least serialisation over every symbol
    permutation and every state permutation sending the initial state to 1.
    Symbol columns are independent blocks, so for each state permutation the
    least arrangement is simply the sorted columns.
    """
    return _table_key(table_of(a))


class EvaluationCache:
    """Shortest lengths keyed by canonical form, optionally stored in a directory."""

    FILENAME = "evaluations.jsonl"

    def __init__(self, directory: str | os.PathLike | None = None) -> None:
        self._data: dict[bytes, int | None] = {}
        self._fresh: dict[bytes, int | None] = {}
        self._lock = threading.Lock()
        self.path = Path(directory) / self.FILENAME if directory is not None else None
        if self.path is not None and self.path.exists():
            with self.path.open() as f:
                for line in f:
                    if line.strip():
                        rec = json.loads(line)
                        self._data[bytes.fromhex(rec["key"])] = rec["length"]

    def __len__(self) -> int:
        return len(self._data)

    def lookup(self, t: Table) -> int | None:
        key = _table_key(t)
        with self._lock:
            if key in self._data:
                return self._data[key]
        value = table_length(t)
        with self._lock:
            self._data[key] = value
            if self.path is not None:
                self._fresh[key] = value
        return value

    def save(self) -> None:
        if self.path is None:
            return
        with self._lock:
            fresh, self._fresh = self._fresh, {}
        if not fresh:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as f:
            for key, value in fresh.items():
                f.write(json.dumps({"key": key.hex(), "length": value}) + "\n")


_default_cache = EvaluationCache()


def evaluate(a: TwoDFA, cache: EvaluationCache | None = None) -> int | None:
    return (cache or _default_cache).lookup(table_of(a))


@dataclass
class SearchConfig:
    n: int
    alphabet_size: int
    mode: str = "local"  # "exhaustive" or "local"
    budget: int = 100_000
    seed: int = 0
    initial: TwoDFA | None = None
    target: int | None = None
    patience: int = 2000
    cache_dir: str | None = None

    def __post_init__(self) -> None:
        if self.n < 1 or self.alphabet_size < 1 or self.budget < 1:
            raise ValueError("n, alphabet_size and budget must all be positive")
        if self.mode not in ("exhaustive", "local"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.initial is not None and self.initial.states != self.n:
            raise ValueError("warm start must have n states")

    def describe(self) -> dict:
        return {
            "n": self.n,
            "alphabet_size": self.alphabet_size,
            "mode": self.mode,
            "budget": self.budget,
            "seed": self.seed,
            "target": self.target,
            "warm_start": self.initial is not None,
        }


@dataclass
class SearchResult:
    best: TwoDFA | None
    best_length: int | None
    evaluated: int
    exhausted: bool
    history: list[tuple[int, int]] = field(default_factory=list)

    def record(self, config: SearchConfig) -> dict:
        return {
            "config": config.describe(),
            "best_length": self.best_length,
            "evaluated": self.evaluated,
            "exhausted": self.exhausted,
            "automaton": to_document(self.best) if self.best is not None else None,
        }


def _finish(result: SearchResult) -> SearchResult:
    if result.best is not None:
        check = oracle.shortest_accepted(result.best)
        if check.length != result.best_length:
            raise RuntimeError(
                f"search reported {result.best_length}, oracle says {check.length}"
            )
    return result


def _canonical_tables(n: int, s: int) -> Iterator[tuple[int, ...]]:
    """Tables with initial state 1, one per symmetry class, skipping those
    whose initial LEND move is not rightward (their language is empty)."""
    w = s + 2
    size = n * w
    options = range(2 * n + 1)
    first = [encode_move(r, Direction.RIGHT) for r in range(1, n + 1)]
    for head in first:
        for rest in itertools.product(options, repeat=size - 1):
            cells = (head, *rest)
            t = Table(n, s, 1, 0, cells)
            flat_self = bytes([n, s]) + b"".join(
                x.to_bytes(2, "big")
                for c in (0, 1, *range(2, w))
                for x in (cells[q * w + c] for q in range(n))
            )
            if _table_key(t, with_accepting=False) == flat_self:
                yield cells


def exhaustive_search(cfg: SearchConfig) -> SearchResult:
    """Maximise the shortest accepted length over every n-state, s-symbol 2DFA.

    The initial state is fixed to 1; each symmetry class of transition
    tables is visited once and tried with every non-empty accepting set.
    """
    n, s = cfg.n, cfg.alphabet_size
    if n * (s + 2) > MAX_EXHAUSTIVE_CELLS:
        raise InfeasibleSearchError(
            f"{n} states x {s + 2} columns exceeds {MAX_EXHAUSTIVE_CELLS} table cells"
        )
    best: Table | None = None
    best_length: int | None = None
    evaluated = 0
    exhausted = True
    history = []
    for cells in _canonical_tables(n, s):
        for fmask in range(1, 1 << n):
            if evaluated >= cfg.budget:
                exhausted = False
                break
            t = Table(n, s, 1, fmask, cells)
            length = table_length(t)
            evaluated += 1
            if length is not None and (best_length is None or length > best_length):
                best, best_length = t, length
                history.append((evaluated, length))
        if not exhausted:
            break
    result = SearchResult(
        automaton_of(best) if best is not None else None, best_length, evaluated, exhausted, history
    )
    return _finish(result)


class _Climber:
    def __init__(self, cfg: SearchConfig, rng: random.Random) -> None:
        self.n = cfg.n
        self.rng = rng
        self.codes = 2 * cfg.n + 1

    def random_table(self, s: int) -> Table:
        rng, n = self.rng, self.n
        cells = [rng.randrange(self.codes) if rng.random() < 0.7 else 0 for _ in range(n * (s + 2))]
        initial = rng.randrange(1, n + 1)
        cells[(initial - 1) * (s + 2)] = encode_move(rng.randrange(1, n + 1), Direction.RIGHT)
        fmask = rng.randrange(1, 1 << n)
        return Table(n, s, initial, fmask, tuple(cells))

    def mutate(self, t: Table) -> Table:
        rng, n = self.rng, self.n
        roll = rng.random()
        if roll < 0.9:
            cells = list(t.cells)
            i = rng.randrange(len(cells))
            cells[i] = (cells[i] + rng.randrange(1, self.codes)) % self.codes
            return Table(n, t.s, t.initial, t.accepting, tuple(cells))
        if roll < 0.97 or n == 1:
            return Table(n, t.s, t.initial, t.accepting ^ (1 << rng.randrange(n)), t.cells)
        initial = rng.choice([q for q in range(1, n + 1) if q != t.initial])
        return Table(n, t.s, initial, t.accepting, t.cells)


def _score(length: int | None) -> int:
    return -1 if length is None else length


def local_search(cfg: SearchConfig) -> SearchResult:
    """Random-restart hill climbing over single-cell, accepting-set and initial-state edits.

    Moves that do not decrease the shortest length are kept.  After
    ``cfg.patience`` evaluations without a strict gain the climb restarts,
    alternately from a perturbed copy of the best table and from a random one.
    Every proposal counts against the budget, cached or not, so runs are
    reproducible from the seed alone.
    """
    rng = random.Random(cfg.seed)
    cache = EvaluationCache(cfg.cache_dir)
    climber = _Climber(cfg, rng)
    names: Sequence[str] | None = None
    if cfg.initial is not None:
        s = max(cfg.alphabet_size, len(cfg.initial.alphabet))
        names = cfg.initial.alphabet + tuple(
            f"x{i}" for i in range(1, s - len(cfg.initial.alphabet) + 1)
        )
        current = table_of(cfg.initial, s)
    else:
        s = cfg.alphabet_size
        current = climber.random_table(s)
    current_score = _score(cache.lookup(current))
    evaluated = 1
    best, best_score = current, current_score
    history = [(evaluated, best_score)]
    stale = 0
    restarts = 0
    while evaluated < cfg.budget and not (cfg.target is not None and best_score >= cfg.target):
        if stale >= cfg.patience:
            restarts += 1
            if restarts % 2:
                current = best
                for _ in range(rng.randrange(2, 6)):
                    current = climber.mutate(current)
            else:
                current = climber.random_table(s)
            current_score = _score(cache.lookup(current))
            evaluated += 1
            stale = 0
            continue
        proposal = climber.mutate(current)
        score = _score(cache.lookup(proposal))
        evaluated += 1
        if score > current_score:
            stale = 0
        else:
            stale += 1
        if score >= current_score:
            current, current_score = proposal, score
        if score > best_score:
            best, best_score = proposal, score
            history.append((evaluated, best_score))
            log.info("evaluation %d: best length %d", evaluated, best_score)
    cache.save()
    best_length = None if best_score < 0 else best_score
    result = SearchResult(automaton_of(best, names), best_length, evaluated, False, history)
    return _finish(result)


def run_search(cfg: SearchConfig) -> SearchResult:
    if cfg.mode == "exhaustive":
        return exhaustive_search(cfg)
    return local_search(cfg)


def append_log(path: str | os.PathLike, cfg: SearchConfig, result: SearchResult) -> None:
    with open(path, "a") as f:
        f.write(json.dumps(result.record(cfg), sort_keys=True) + "\n")


def best_lengths_from_log(path: str | os.PathLike) -> dict[int, int]:
    """Best length per state count recorded in a search log."""
    best: dict[int, int] = {}
    p = Path(path)
    if not p.exists():
        return best
    for line in p.read_text().splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        n, length = rec["config"]["n"], rec["best_length"]
        if length is not None and length > best.get(n, -1):
            best[n] = length
    return best


__all__ = [
    "EvaluationCache",
    "InfeasibleSearchError",
    "SearchConfig",
    "SearchResult",
    "Table",
    "append_log",
    "automaton_of",
    "best_lengths_from_log",
    "canonical_form",
    "evaluate",
    "exhaustive_search",
    "local_search",
    "run_search",
    "table_length",
    "table_of",
]
