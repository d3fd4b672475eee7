"""Command-line entry point: ``twodfa <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 for usage,
file or parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Any, Sequence

from . import oracle
from .automaton import (
    DirectionPartition,
    ParseError,
    TwoDFA,
    classify_direction,
    format_tokens,
    parse_automaton,
    parse_tokens,
    serialize_automaton,
)
from .dirdet import DirDetParams, build_dirdet_automaton, enumerate_pairs
from .general import build_core, expected_length, family_witness
from .simulator import render_trace, run_full, run_segment
from . import search as search_mod

MAX_DIRDET_STATES = 10
MAX_GENERAL_STATES = 8
DEFAULT_LOG = "search-log.jsonl"


class UsageError(Exception):
    pass


@dataclass
class VerifyReport:
    rows: list[tuple[str, Any, Any, bool]] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(row[3] for row in self.rows)

    def check(self, description: str, expected: Any, actual: Any) -> None:
        self.rows.append((description, expected, actual, expected == actual))


def verify_dirdet(report: VerifyReport, params: DirDetParams) -> None:
    k, l = params.k, params.l  # noqa: E741
    tag = f"dirdet k={k} l={l}"
    fw = build_dirdet_automaton(params)
    res = oracle.shortest_accepted(fw.automaton)
    report.check(f"{tag}: pair count", comb(k + l, l + 1), len(enumerate_pairs(params)))
    report.check(f"{tag}: shortest length", fw.expected_length, res.length)
    report.check(f"{tag}: shortest string is the witness", True, res.string == fw.witness)
    report.check(f"{tag}: witness accepted", True, run_full(fw.automaton, fw.witness).accepted)
    part = classify_direction(fw.automaton)
    sizes = (len(part.q_plus), len(part.q_minus)) if isinstance(part, DirectionPartition) else None
    report.check(f"{tag}: direction partition sizes", (k, l), sizes)
    if res.length is not None:
        report.check(f"{tag}: within bounds", None, oracle.bound_violation(fw.automaton, res.length))


def verify_general(report: VerifyReport, n: int) -> None:
    tag = f"general n={n}"
    core = build_core(n)
    fw = family_witness(n)
    res = oracle.shortest_accepted(fw.automaton)
    report.check(f"{tag}: shortest length", expected_length(n), res.length)
    report.check(f"{tag}: witness accepted", True, run_full(fw.automaton, fw.witness).accepted)
    exits = all(
        run_segment(core.automaton, core.witness, p, n).exits_right_in(1)
        for p in range(1, len(core.witness) + 1)
    )
    report.check(f"{tag}: every start on the witness exits right in state 1", True, exits)
    report.check(
        f"{tag}: not direction-determinate",
        False,
        isinstance(classify_direction(fw.automaton), DirectionPartition),
    )
    if res.length is not None:
        report.check(f"{tag}: within bounds", None, oracle.bound_violation(fw.automaton, res.length))


def cmd_verify(
    scope: str = "all",
    max_states: int = 7,
    max_n: int = 6,
    single: DirDetParams | None = None,
) -> VerifyReport:
    if max_states > MAX_DIRDET_STATES:
        raise UsageError(f"--max-states is capped at {MAX_DIRDET_STATES}")
    if max_n > MAX_GENERAL_STATES:
        raise UsageError(f"--max-n is capped at {MAX_GENERAL_STATES}")
    report = VerifyReport()
    if single is not None:
        if single.k + single.l > MAX_DIRDET_STATES:
            raise UsageError(f"k + l is capped at {MAX_DIRDET_STATES}")
        verify_dirdet(report, single)
        return report
    if scope in ("dirdet", "all"):
        for total in range(2, max_states + 1):
            for k in range(2, total + 1):
                verify_dirdet(report, DirDetParams(k, total - k))
    if scope in ("general", "all"):
        for n in range(2, max_n + 1):
            verify_general(report, n)
    return report


TABLE_HEADERS = ("n", "dirdet", "lower", "computed", "upper")


def table_rows(n_max: int, computed: dict[int, int] | None = None) -> list[dict]:
    if n_max < 2:
        raise UsageError("n_max must be at least 2")
    computed = computed or {}
    return [
        {
            "n": n,
            "dirdet": comb(n, n // 2) - 1,
            "lower": expected_length(n),
            "computed": computed.get(n),
            "upper": comb(2 * n, n + 1) - 1,
        }
        for n in range(2, n_max + 1)
    ]


def cmd_table(n_max: int, computed: dict[int, int] | None = None) -> str:
    rows = table_rows(n_max, computed)
    cells = [list(TABLE_HEADERS)] + [
        ["" if row[h] is None else str(row[h]) for h in TABLE_HEADERS] for row in rows
    ]
    widths = [max(len(line[i]) for line in cells) for i in range(len(TABLE_HEADERS))]
    return "".join(
        "  ".join(c.rjust(w) for c, w in zip(line, widths)).rstrip() + "\n" for line in cells
    )


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> TwoDFA:
    return parse_automaton(_read_text(path))


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _print_json(obj: Any) -> None:
    print(json.dumps(obj, indent=1))


def _gen(args: argparse.Namespace) -> int:
    if args.family == "dirdet":
        if args.k is None or args.l is None:
            raise UsageError("gen dirdet needs --k and --l")
        if args.k + args.l > MAX_DIRDET_STATES:
            raise UsageError(f"k + l is capped at {MAX_DIRDET_STATES}")
        fw = build_dirdet_automaton(DirDetParams(args.k, args.l))
        automaton = fw.automaton
        sidecar = fw.sidecar()
    else:
        if args.n is None:
            raise UsageError("gen general needs --n")
        if args.n > MAX_GENERAL_STATES + 4:
            raise UsageError(f"n is capped at {MAX_GENERAL_STATES + 4}")
        if args.core:
            core = build_core(args.n)
            automaton = core.automaton
            sidecar = {"witness": format_tokens(core.witness), "expected_length": len(core.witness)}
        else:
            fw = family_witness(args.n)
            automaton = fw.automaton
            sidecar = fw.sidecar()
    _emit(serialize_automaton(automaton), args.output)
    sidecar_path = args.sidecar
    if sidecar_path is None and args.output not in (None, "-"):
        sidecar_path = str(Path(args.output).with_suffix(".witness.json"))
    if sidecar_path is not None:
        Path(sidecar_path).write_text(json.dumps(sidecar, indent=1) + "\n")
    return 0


def _pairs(args: argparse.Namespace) -> int:
    pairs = enumerate_pairs(DirDetParams(args.k, args.l))
    if args.format == "json":
        _print_json(
            [{"P": list(p.P), "R": list(p.R), "signature": list(p.signature)} for p in pairs]
        )
    else:
        width = len(str(len(pairs)))
        for i, p in enumerate(pairs, 1):
            print(f"{i:>{width}}  {p.describe()}")
    return 0


def _simulate(args: argparse.Namespace) -> int:
    a = _load(args.automaton)
    w = parse_tokens(args.input)
    if args.start_pos is not None:
        state = args.start_state if args.start_state is not None else a.initial
        seg = run_segment(a, w, args.start_pos, state)
        if args.format == "json":
            _print_json({"kind": seg.kind.value, "state": seg.state, "steps": seg.steps})
        else:
            tail = f" in state {a.display(seg.state)}" if seg.state is not None else ""
            print(f"{seg.kind.value}{tail} after {seg.steps} steps")
        return 0
    out = run_full(a, w, capture_trace=args.trace)
    if args.format == "json":
        doc: dict[str, Any] = {"kind": out.kind.value}
        if out.at is not None:
            doc["at"] = {"state": out.at.state, "position": out.at.position}
        if out.trace is not None:
            doc["trace"] = [[c.state, c.position] for c in out.trace]
        _print_json(doc)
    else:
        print(out.kind.value)
        if out.trace is not None:
            sys.stdout.write(render_trace(w, out.trace, dict(a.aliases)))
    return 0


def _shortest(args: argparse.Namespace) -> int:
    a = _load(args.automaton)
    if args.method == "brute":
        res = oracle.brute_force_shortest(a, args.max_len)
    else:
        res = oracle.shortest_accepted(a)
    if args.format == "json":
        _print_json(
            {
                "found": res.found,
                "length": res.length,
                "string": format_tokens(res.string) if res.found else None,
                "behaviors_explored": res.behaviors_explored,
            }
        )
    elif res.found:
        print(f"length: {res.length}")
        print(f"string: {format_tokens(res.string)}")
        print(f"behaviors_explored: {res.behaviors_explored}")
    else:
        print("found: false")
        print(f"behaviors_explored: {res.behaviors_explored}")
    return 0


def _search(args: argparse.Namespace) -> int:
    warm = _load(args.warm_start) if args.warm_start else None
    cfg = search_mod.SearchConfig(
        n=args.n,
        alphabet_size=args.alphabet,
        mode=args.mode,
        budget=args.budget,
        seed=args.seed,
        initial=warm,
        target=args.target,
        cache_dir=args.cache,
    )
    try:
        result = search_mod.run_search(cfg)
    except search_mod.InfeasibleSearchError as exc:
        raise UsageError(str(exc)) from None
    if args.log:
        search_mod.append_log(args.log, cfg, result)
    if args.format == "json":
        _print_json(result.record(cfg))
    else:
        print(f"best_length: {result.best_length}")
        print(f"evaluated: {result.evaluated}")
        print(f"exhausted: {str(result.exhausted).lower()}")
        if result.best is not None:
            sys.stdout.write(serialize_automaton(result.best))
    return 0


def _verify(args: argparse.Namespace) -> int:
    single = None
    if args.k is not None or args.l is not None:
        if args.k is None or args.l is None:
            raise UsageError("--k and --l go together")
        single = DirDetParams(args.k, args.l)
    report = cmd_verify(args.scope, args.max_states, args.max_n, single)
    if args.format == "json":
        _print_json(
            {
                "overall": report.overall,
                "rows": [
                    {"description": d, "expected": e, "actual": a, "pass": ok}
                    for d, e, a, ok in report.rows
                ],
            }
        )
    else:
        for d, e, a, ok in report.rows:
            print(f"{'PASS' if ok else 'FAIL'}  {d}: expected {e}, got {a}")
        print(f"overall: {'PASS' if report.overall else 'FAIL'}")
    return 0 if report.overall else 1


def _table(args: argparse.Namespace) -> int:
    computed = search_mod.best_lengths_from_log(args.log) if args.log else {}
    if args.format == "json":
        _print_json(table_rows(args.n_max, computed))
    else:
        sys.stdout.write(cmd_table(args.n_max, computed))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twodfa", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("gen", help="generate a family automaton")
    p.add_argument("family", choices=("dirdet", "general"))
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--core", action="store_true", help="emit the unwrapped core (general only)")
    p.add_argument("-o", "--output")
    p.add_argument("--sidecar", help="where to write the {witness, expected_length} record")
    p.set_defaults(func=_gen)

    p = sub.add_parser("pairs", help="list the ordered (P, R) pairs")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    fmt(p)
    p.set_defaults(func=_pairs)

    p = sub.add_parser("simulate", help="run an automaton on a string")
    p.add_argument("--automaton", default="-")
    p.add_argument("--input", default="", help="whitespace-separated tokens")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--start-pos", type=int, help="run on the bare segment from this position")
    p.add_argument("--start-state", type=int)
    fmt(p)
    p.set_defaults(func=_simulate)

    p = sub.add_parser("shortest", help="shortest accepted string")
    p.add_argument("--automaton", default="-")
    p.add_argument("--method", choices=("behavior", "brute"), default="behavior")
    p.add_argument("--max-len", type=int, default=8)
    fmt(p)
    p.set_defaults(func=_shortest)

    p = sub.add_parser("search", help="look for automata with long shortest strings")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphabet", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "local"), default="local")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", type=int)
    p.add_argument("--warm-start")
    p.add_argument("--cache")
    p.add_argument("--log", default=DEFAULT_LOG, help="append results here ('' disables)")
    fmt(p)
    p.set_defaults(func=_search)

    p = sub.add_parser("verify", help="check the family theorems at small sizes")
    p.add_argument("--scope", choices=("dirdet", "general", "all"), default="all")
    p.add_argument("--max-states", type=int, default=7, help="largest k + l for dirdet")
    p.add_argument("--max-n", type=int, default=6, help="largest n for general")
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    fmt(p)
    p.set_defaults(func=_verify)

    p = sub.add_parser("table", help="bounds table for small n")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--log", default=None, help="search log supplying the computed column")
    fmt(p)
    p.set_defaults(func=_table)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"twodfa: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
