"""Two-way deterministic finite automata with extremal shortest accepted strings."""

from .automaton import (
    LEND,
    REND,
    Direction,
    DirectionPartition,
    InvalidAutomatonError,
    NotDirectionDeterminate,
    ParseError,
    TwoDFA,
    ValidationReport,
    classify_direction,
    parse_automaton,
    serialize_automaton,
    validate,
)
from .dirdet import DirDetParams, FamilyWitness, PairPR, build_dirdet_automaton, compare_pairs, enumerate_pairs
from .general import CoreAutomaton, build_core, strip_arrows, wrap
from .oracle import Behavior, ShortestResult, brute_force_shortest, shortest_accepted
from .simulator import Configuration, RunOutcome, SegmentOutcome, render_trace, run_full, run_segment

__all__ = [
    "LEND",
    "REND",
    "Behavior",
    "Configuration",
    "CoreAutomaton",
    "DirDetParams",
    "Direction",
    "DirectionPartition",
    "FamilyWitness",
    "InvalidAutomatonError",
    "NotDirectionDeterminate",
    "PairPR",
    "ParseError",
    "RunOutcome",
    "SegmentOutcome",
    "ShortestResult",
    "TwoDFA",
    "ValidationReport",
    "brute_force_shortest",
    "build_core",
    "build_dirdet_automaton",
    "classify_direction",
    "compare_pairs",
    "enumerate_pairs",
    "parse_automaton",
    "render_trace",
    "run_full",
    "run_segment",
    "serialize_automaton",
    "shortest_accepted",
    "strip_arrows",
    "validate",
    "wrap",
]
