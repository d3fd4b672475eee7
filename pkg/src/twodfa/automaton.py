"""Two-way deterministic finite automata: data model, validation, JSON format.

States are the integers ``1..n``.  The two end-markers are spelled with the
reserved tokens ``LEND`` and ``REND``; every other symbol is an opaque,
whitespace-free token listed in the automaton's alphabet.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

LEND = "LEND"
REND = "REND"
END_MARKERS = (LEND, REND)


class Direction(enum.IntEnum):
    LEFT = -1
    RIGHT = 1

    @property
    def letter(self) -> str:
        return "L" if self is Direction.LEFT else "R"

    @classmethod
    def from_letter(cls, letter: str) -> "Direction":
        try:
            return {"L": cls.LEFT, "R": cls.RIGHT}[letter]
        except KeyError:
            raise ParseError(f"move must be 'L' or 'R', got {letter!r}") from None


L = Direction.LEFT
R = Direction.RIGHT


class ParseError(ValueError):
    """Raised for malformed automaton documents or token strings."""


class InvalidAutomatonError(ValueError):
    """Raised when an operation is given an automaton that fails validation."""


@dataclass(frozen=True, eq=False)
class TwoDFA:
    """An n-state 2DFA with a partial transition table.

    ``transitions`` maps ``(state, symbol)`` to ``(target, direction)``, where
    ``symbol`` is an alphabet token or one of the end-markers.  Accepting
    states only matter when the head stands on the right end-marker.
    ``aliases`` holds display names (e.g. ``{5: "1'"}``) and carries no
    semantics.
    """

    alphabet: tuple[str, ...]
    states: int
    initial: int
    accepting: frozenset[int]
    transitions: Mapping[tuple[int, str], tuple[int, Direction]]
    aliases: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(
            self,
            "transitions",
            {key: (t, Direction(d)) for key, (t, d) in self.transitions.items()},
        )
        object.__setattr__(self, "aliases", dict(self.aliases))

    def delta(self, state: int, symbol: str) -> tuple[int, Direction] | None:
        return self.transitions.get((state, symbol))

    def display(self, state: int) -> str:
        return self.aliases.get(state, str(state))

    @cached_property
    def report(self) -> "ValidationReport":
        return validate(self)

    def _key(self):
        return (
            self.alphabet,
            self.states,
            self.initial,
            tuple(sorted(self.accepting)),
            tuple(sorted(self.transitions.items())),
            tuple(sorted(self.aliases.items())),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwoDFA):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return (
            f"TwoDFA(states={self.states}, initial={self.initial}, "
            f"accepting={sorted(self.accepting)}, |alphabet|={len(self.alphabet)}, "
            f"|transitions|={len(self.transitions)})"
        )


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors


@dataclass(frozen=True)
class DirectionPartition:
    """States entered only rightward, only leftward, and never entered."""

    q_plus: frozenset[int]
    q_minus: frozenset[int]
    unconstrained: frozenset[int]


@dataclass(frozen=True)
class NotDirectionDeterminate:
    """Witness state entered by both a left move and a right move."""

    state: int


def _is_token(tok: object) -> bool:
    return isinstance(tok, str) and tok != "" and not any(c.isspace() for c in tok)


def validate(a: TwoDFA) -> ValidationReport:
    errors: list[str] = []
    warnings: list[str] = []
    n = a.states
    if not isinstance(n, int) or n < 1:
        errors.append(f"state count must be a positive integer, got {n!r}")
        return ValidationReport(tuple(errors))
    seen: set[str] = set()
    for tok in a.alphabet:
        if not _is_token(tok):
            errors.append(f"bad symbol token {tok!r}")
        elif tok in END_MARKERS:
            errors.append(f"reserved token {tok!r} in alphabet")
        elif tok in seen:
            errors.append(f"duplicate symbol {tok!r}")
        seen.add(tok)
    if not 1 <= a.initial <= n:
        errors.append(f"initial state {a.initial} outside 1..{n}")
    for q in sorted(a.accepting):
        if not 1 <= q <= n:
            errors.append(f"accepting state {q} outside 1..{n}")
    symbols = seen | set(END_MARKERS)
    for (q, sym), (r, d) in sorted(a.transitions.items(), key=lambda kv: repr(kv)):
        if not 1 <= q <= n:
            errors.append(f"transition source {q} outside 1..{n}")
        if not 1 <= r <= n:
            errors.append(f"transition target {r} at ({q}, {sym}) outside 1..{n}")
        if sym not in symbols:
            errors.append(f"transition symbol {sym!r} not in alphabet")
        if sym == REND and d is R:
            warnings.append(f"off-tape move: right move at REND from state {q}")
        if sym == LEND and d is L:
            warnings.append(f"off-tape move: left move at LEND from state {q}")
    return ValidationReport(tuple(errors), tuple(warnings))


def ensure_valid(a: TwoDFA) -> TwoDFA:
    errors = a.report.errors
    if errors:
        raise InvalidAutomatonError("; ".join(errors))
    return a


def classify_direction(a: TwoDFA) -> DirectionPartition | NotDirectionDeterminate:
    ensure_valid(a)
    entered: dict[int, set[Direction]] = {}
    for r, d in a.transitions.values():
        entered.setdefault(r, set()).add(d)
    both = sorted(q for q, ds in entered.items() if len(ds) == 2)
    if both:
        return NotDirectionDeterminate(both[0])
    plus = frozenset(q for q, ds in entered.items() if R in ds)
    minus = frozenset(q for q, ds in entered.items() if L in ds)
    rest = frozenset(range(1, a.states + 1)) - plus - minus
    return DirectionPartition(plus, minus, rest)


def symbol_order(a: TwoDFA) -> tuple[str, ...]:
    return a.alphabet + END_MARKERS


def to_document(a: TwoDFA) -> dict:
    order = {sym: i for i, sym in enumerate(symbol_order(a))}
    rows = sorted(a.transitions.items(), key=lambda kv: (kv[0][0], order[kv[0][1]]))
    doc = {
        "states": a.states,
        "initial": a.initial,
        "accepting": sorted(a.accepting),
        "alphabet": list(a.alphabet),
        "transitions": [
            {"state": q, "symbol": sym, "target": r, "move": d.letter}
            for (q, sym), (r, d) in rows
        ],
    }
    if a.aliases:
        doc["aliases"] = {str(q): name for q, name in sorted(a.aliases.items())}
    return doc


def serialize_automaton(a: TwoDFA) -> str:
    """Canonical JSON text: states ascending, symbols in alphabet order then LEND, REND."""
    ensure_valid(a)
    doc = to_document(a)
    fields = [f' "{key}": {json.dumps(doc[key])}' for key in ("states", "initial", "accepting", "alphabet")]
    rows = ",\n".join(f"  {json.dumps(row)}" for row in doc["transitions"])
    fields.append(f' "transitions": [\n{rows}\n ]' if rows else ' "transitions": []')
    if "aliases" in doc:
        fields.append(f' "aliases": {json.dumps(doc["aliases"])}')
    return "{\n" + ",\n".join(fields) + "\n}\n"


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParseError(msg)


def _int(value: object, what: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), f"{what} must be an integer")
    return value  # type: ignore[return-value]


def from_document(doc: object) -> TwoDFA:
    _require(isinstance(doc, dict), "automaton document must be a JSON object")
    assert isinstance(doc, dict)
    unknown = set(doc) - {"states", "initial", "accepting", "alphabet", "transitions", "aliases"}
    _require(not unknown, f"unknown keys {sorted(unknown)}")
    for key in ("states", "initial", "accepting", "alphabet", "transitions"):
        _require(key in doc, f"missing key {key!r}")
    n = _int(doc["states"], "states")
    initial = _int(doc["initial"], "initial")
    _require(isinstance(doc["accepting"], list), "accepting must be a list")
    accepting = [_int(q, "accepting state") for q in doc["accepting"]]
    _require(isinstance(doc["alphabet"], list), "alphabet must be a list")
    alphabet = doc["alphabet"]
    for tok in alphabet:
        _require(_is_token(tok), f"bad symbol token {tok!r}")
        _require(tok not in END_MARKERS, f"reserved token {tok!r} used in alphabet")
    _require(len(set(alphabet)) == len(alphabet), "duplicate symbol in alphabet")
    _require(isinstance(doc["transitions"], list), "transitions must be a list")
    table: dict[tuple[int, str], tuple[int, Direction]] = {}
    for row in doc["transitions"]:
        _require(
            isinstance(row, dict) and set(row) == {"state", "symbol", "target", "move"},
            f"malformed transition {row!r}",
        )
        q = _int(row["state"], "transition state")
        r = _int(row["target"], "transition target")
        sym = row["symbol"]
        _require(isinstance(sym, str), f"malformed transition symbol {sym!r}")
        _require((q, sym) not in table, f"duplicate transition cell ({q}, {sym})")
        table[q, sym] = (r, Direction.from_letter(row["move"]))
    aliases = doc.get("aliases", {})
    _require(isinstance(aliases, dict), "aliases must be an object")
    alias_map = {}
    for key, name in aliases.items():
        _require(key.isdigit() and isinstance(name, str), f"malformed alias {key!r}")
        alias_map[int(key)] = name
    a = TwoDFA(tuple(alphabet), n, initial, frozenset(accepting), table, alias_map)
    if a.report.errors:
        raise ParseError("; ".join(a.report.errors))
    return a


def parse_automaton(text: str) -> TwoDFA:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    return from_document(doc)


def parse_tokens(text: str) -> tuple[str, ...]:
    return tuple(text.split())


def format_tokens(w: Iterable[str]) -> str:
    return " ".join(w)
