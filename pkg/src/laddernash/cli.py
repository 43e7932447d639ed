"""Command-line front end.

    laddernash regime --p 0 --q 2 --r 3 --s 0
    laddernash count --graph ladder --case 1 --players 14 --method all
    laddernash enumerate --graph ladder --case 1 --players 10
    laddernash verify --max-players 20
    laddernash scaling --graph circular --case 2 --max-n 40 --out circ2.csv

Exit codes: 0 success, 1 oracle/blocks mismatch, 2 usage error, 3 size limit.
Counts are written as decimal strings so no precision is lost.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field

from . import blocks, closed_forms, oracle
from .blocks import Case
from .errors import LadderNashError, SizeLimit, UnsupportedParity
from .game import PayoffParams, Regime, reduce, regime_of, representative_params
from .topology import MIN_RUNGS, GraphKind, build, rung_blocks

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_SIZE = 0, 1, 2, 3

METHODS = ("oracle", "blocks", "closed")


class UsageError(Exception):
    pass


@dataclass
class CountReport:
    graph: str
    players: int
    regime: Regime
    payoffs: PayoffParams
    counts: dict[str, int | None] = field(default_factory=dict)
    timings_ms: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.players // 2

    @property
    def case(self) -> Case:
        return Case.for_regime(self.regime)[0]

    @property
    def discrepancy(self) -> int | None:
        """Closed form minus the block count, when both exist."""
        closed, exact = self.counts.get("closed_paper"), self.counts.get("blocks")
        if closed is None or exact is None:
            return None
        return closed - exact

    @property
    def consistent(self) -> bool:
        o, b = self.counts.get("oracle"), self.counts.get("blocks")
        return o is None or b is None or o == b

    def to_dict(self, timings: bool = True) -> dict:
        rp = reduce(self.payoffs)
        out = {
            "graph": self.graph,
            "players": self.players,
            "n": self.n,
            "regime": self.regime.value,
            "case": int(self.case),
            "x": str(rp.x),
            "y": str(rp.y),
            "counts": {k: _dec(v) for k, v in self.counts.items()},
            "discrepancy": _dec(self.discrepancy),
            "notes": self.notes,
        }
        if timings:
            out["timings_ms"] = self.timings_ms
        return out


def _dec(value: int | None) -> str | None:
    return None if value is None else str(value)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


# -- argument handling ------------------------------------------------------


def _add_game_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("game (pick one; default case 1)")
    g.add_argument("--case", type=int, choices=(1, 2), help="1 = MINORITY_A, 2 = LONE_A")
    g.add_argument("--regime", choices=[r.value for r in Regime])
    for name in "pqrs":
        g.add_argument(f"--{name}", help="payoff as an integer or fraction such as 3/2")


def _game_from_args(args) -> tuple[Regime, PayoffParams]:
    given = [getattr(args, c) for c in "pqrs"]
    if any(v is not None for v in given):
        if any(v is None for v in given):
            raise UsageError("give all four of --p --q --r --s")
        params = PayoffParams(*given)
        regime = regime_of(reduce(params))
        if args.regime and Regime(args.regime) is not regime:
            raise UsageError(f"payoffs give {regime.value}, not {args.regime}")
        if args.case and Case(args.case).regime.case != regime.case:
            raise UsageError(f"payoffs give {regime.value}, not case {args.case}")
        return regime, params
    if args.regime and args.case:
        raise UsageError("--case and --regime are mutually exclusive")
    if args.regime:
        regime = Regime(args.regime)
    else:
        regime = Case(args.case or 1).regime
    return regime, representative_params(regime)


def _rungs(players: int) -> int:
    if players % 2 or players < 4:
        raise UsageError(f"--players must be an even number >= 4, got {players}")
    return players // 2


# -- counting ---------------------------------------------------------------


def _timed(report: CountReport, name: str, fn):
    t0 = time.perf_counter()
    try:
        value = fn()
    except UnsupportedParity as exc:
        report.counts[name] = None
        report.notes.append(f"{name}: {exc}")
        return
    report.counts[name] = value
    report.timings_ms[name] = round((time.perf_counter() - t0) * 1000, 3)


def make_report(
    graph: GraphKind,
    players: int,
    regime: Regime,
    params: PayoffParams,
    methods: tuple[str, ...],
    *,
    strict_limit: bool,
) -> CountReport:
    n = _rungs(players)
    topo = build(graph, n)
    case, swapped = Case.for_regime(regime)
    report = CountReport(graph.value, players, regime, params)
    if swapped:
        report.notes.append(f"{regime.value} counted as {case.regime.value} via a<->b swap")
    family = graph.value

    if "oracle" in methods:
        if topo.players > oracle.max_players():
            if strict_limit:
                raise SizeLimit(
                    f"{topo.players} players exceeds the oracle limit of {oracle.max_players()}"
                )
            report.counts["oracle"] = None
            report.notes.append("oracle: skipped, above the player limit")
        else:
            pay = oracle.PayoffAssignment.uniform(params)
            _timed(report, "oracle", lambda: oracle.count_equilibria(topo, pay))
    if "blocks" in methods:
        _timed(report, "blocks", lambda: closed_forms.exact_count(family, case, n))
    if "closed" in methods:
        _timed(report, "closed_paper", lambda: closed_forms.closed_count(family, case, n))
    return report


def cmd_regime(args) -> int:
    params = PayoffParams(args.p, args.q, args.r, args.s)
    rp = reduce(params)
    print(_dump({"x": str(rp.x), "y": str(rp.y), "regime": regime_of(rp).value}))
    return EXIT_OK


def cmd_count(args) -> int:
    regime, params = _game_from_args(args)
    methods = METHODS if args.method == "all" else (args.method,)
    report = make_report(
        GraphKind(args.graph), args.players, regime, params, methods,
        strict_limit=args.method == "oracle",
    )
    print(_dump(report.to_dict()))
    return EXIT_OK if report.consistent else EXIT_MISMATCH


def _block_decompositions(graph: GraphKind, regime: Regime, n: int) -> dict[str, str]:
    case, swapped = Case.for_regime(regime)
    try:
        if graph is GraphKind.LADDER:
            sols = blocks.ladder_solutions(case, n, swap=swapped)
        else:
            k, odd = rung_blocks(n)
            if odd:
                return {}
            sols = blocks.circular_solutions(case, k, swap=swapped)
    except UnsupportedParity:
        return {}
    return {str(d.profile): d.chain for d in sols}


def cmd_enumerate(args) -> int:
    regime, params = _game_from_args(args)
    graph = GraphKind(args.graph)
    n = _rungs(args.players)
    topo = build(graph, n)
    chains = _block_decompositions(graph, regime, n)
    if args.method == "oracle":
        eq = oracle.enumerate_equilibria(topo, oracle.PayoffAssignment.uniform(params))
        profiles = eq.strings()
    else:
        if not chains:
            raise UsageError("no block rules for this graph, case and parity; use --method oracle")
        profiles = sorted(chains)
    out = sys.stdout
    for prof in profiles:
        chain = chains.get(prof)
        out.write(f"{prof}\t{chain}\n" if chain else f"{prof}\n")
    return EXIT_OK


VERIFY_HEADER = ("graph", "regime", "players", "oracle", "blocks", "closed_paper", "discrepancy", "status")


def verify_rows(max_players: int, min_players: int = 4, mirror: bool = False) -> list[dict]:
    regimes = [Regime.MINORITY_A, Regime.LONE_A]
    if mirror:
        regimes += [Regime.MINORITY_B, Regime.LONE_B]
    rows = []
    for graph in GraphKind:
        lowest = max(min_players, 2 * MIN_RUNGS[graph])
        for regime in regimes:
            for players in range(lowest, max_players + 1, 2):
                report = make_report(
                    graph, players, regime, representative_params(regime), METHODS,
                    strict_limit=True,
                )
                c = report.counts
                if c.get("blocks") is None:
                    status = "oracle-only"
                elif c["oracle"] == c["blocks"]:
                    status = "ok"
                else:
                    status = "MISMATCH"
                rows.append(
                    {
                        "graph": graph.value,
                        "regime": regime.value,
                        "players": players,
                        "oracle": _dec(c.get("oracle")) or "",
                        "blocks": _dec(c.get("blocks")) or "",
                        "closed_paper": _dec(c.get("closed_paper")) or "",
                        "discrepancy": _dec(report.discrepancy) or "",
                        "status": status,
                    }
                )
    return rows


def cmd_verify(args) -> int:
    if args.max_players > oracle.max_players():
        raise SizeLimit(
            f"--max-players {args.max_players} exceeds the oracle limit of {oracle.max_players()}"
        )
    rows = verify_rows(args.max_players, args.min_players, args.mirror)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=VERIFY_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())
    bad = sum(r["status"] == "MISMATCH" for r in rows)
    print(f"verify: {len(rows)} rows, {bad} mismatches", file=sys.stderr)
    return EXIT_MISMATCH if bad else EXIT_OK


SCALING_HEADER = ("players", "count_exact", "count_closed", "log_count")


def scaling_rows(family: str, regime: Regime, max_n: int) -> list[tuple[int, int, int, float]]:
    case, _ = Case.for_regime(regime)
    first = 4 if family == "circular" else 2
    rows = []
    for n in range(first, max_n + 1, 2):
        exact = closed_forms.exact_count(family, case, n)
        closed = closed_forms.closed_count(family, case, n)
        rows.append((2 * n, exact, closed, math.log(exact)))
    return rows


def cmd_scaling(args) -> int:
    regime, _ = _game_from_args(args)
    rows = scaling_rows(args.graph, regime, args.max_n)
    if not rows:
        raise UsageError(f"--max-n {args.max_n} leaves no even n to report")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCALING_HEADER)
    for players, exact, closed, log_count in rows:
        writer.writerow((players, exact, closed, f"{log_count:.12f}"))
    if args.out in (None, "-"):
        sys.stdout.write(buf.getvalue())
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laddernash",
        description="Count pure Nash equilibria of anti-coordination games on (circular) ladders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("regime", help="classify a payoff set")
    for name in "pqrs":
        p.add_argument(f"--{name}", required=True)
    p.set_defaults(func=cmd_regime)

    p = sub.add_parser("count", help="count equilibria by one or all methods")
    p.add_argument("--graph", choices=[g.value for g in GraphKind], required=True)
    p.add_argument("--players", type=int, required=True)
    p.add_argument("--method", choices=METHODS + ("all",), default="all")
    _add_game_args(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list equilibria with their block chains")
    p.add_argument("--graph", choices=[g.value for g in GraphKind], required=True)
    p.add_argument("--players", type=int, required=True)
    p.add_argument("--method", choices=("oracle", "blocks"), default="oracle")
    _add_game_args(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="cross-check oracle, blocks and closed forms")
    p.add_argument("--max-players", type=int, required=True)
    p.add_argument("--min-players", type=int, default=4)
    p.add_argument("--mirror", action="store_true", help="also run MINORITY_B and LONE_B")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scaling", help="CSV series of exact and closed-form counts")
    p.add_argument("--graph", choices=closed_forms.FAMILIES, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--out", help="output file (default stdout)")
    _add_game_args(p)
    p.set_defaults(func=cmd_scaling)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SizeLimit as exc:
        print(f"laddernash: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (UsageError, LadderNashError, ValueError) as exc:
        print(f"laddernash: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
