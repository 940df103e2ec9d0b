"""Command-line entry point.

Every successful run prints exactly one machine-readable line on stdout;
diagnostics go to stderr. Exit codes: 2 parse error, 3 infeasible pattern,
4 budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from .bench import SUITES, run_bench
from .embed import BudgetExceeded
from .estimator import (
    BudgetExhaustedError,
    ColorModeError,
    EstimateReport,
    EstimationConfig,
    count_subgraph,
)
from .graph import GraphFormatError, QueryCounts, format_graph, load_graph
from .instances import (
    cycle,
    gen_disjointness,
    gen_join_lowerbound,
    gen_planted_gnm,
    gen_random,
)
from .oracle import exact_count, target_count
from .pattern import InfeasiblePatternError, decompose

EXIT_PARSE, EXIT_INFEASIBLE, EXIT_BUDGET = 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'i,j'") from None
    return a, b


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="subcount", description="Sublinear subgraph counting by sampling.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="estimate the number of copies of a pattern")
    c.add_argument("graph")
    c.add_argument("pattern")
    c.add_argument("--eps", type=float, default=0.1)
    c.add_argument("--seed", type=int)
    c.add_argument("--hint", type=float, help="known lower bound on the profile count")
    c.add_argument("--colored", action="store_true", help="count color-matching copies")
    c.add_argument("--star-fast", action="store_true")
    c.add_argument("--budget", type=float, default=10.0, help="per-round query cap multiplier")
    c.add_argument("--c", type=float, default=64.0, dest="const")
    c.add_argument("--rounds", type=int)
    c.add_argument("--exact", action="store_true", help="skip sampling and count exactly")

    e = sub.add_parser("exact", help="exact counts by backtracking")
    e.add_argument("graph")
    e.add_argument("pattern")
    e.add_argument("--colored", action="store_true")

    dcp = sub.add_parser("decompose", help="print the cycle/star decomposition")
    dcp.add_argument("pattern")

    g = sub.add_parser("gen", help="generate instances")
    gsub = g.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for name in ("disj", "join", "gnm", "planted"):
        sp = gsub.add_parser(name)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write the graph here instead of stdout")
        sp.add_argument("--no-truth", action="store_true", help="skip the exact ground-truth count")
        if name == "disj":
            sp.add_argument("--K", type=int, required=True)
            sp.add_argument("--k", type=int, required=True)
            sp.add_argument("--hit", type=_pair)
        elif name == "join":
            sp.add_argument("--pattern", required=True)
            sp.add_argument("--m", type=int, required=True)
            sp.add_argument("--which", choices=("g0", "g1"), required=True)
            sp.add_argument("--pattern-out", help="write the colored pattern here")
        elif name == "gnm":
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--m", type=int, required=True)
        else:
            sp.add_argument("--pattern", required=True)
            sp.add_argument("--copies", type=int, required=True)
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--m", type=int, required=True)
            sp.add_argument("--attach", type=int, default=0)

    b = sub.add_parser("bench", help="run a benchmark suite and write CSV")
    b.add_argument("suite", choices=SUITES)
    b.add_argument("--out", help="CSV path (stdout when omitted)")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--eps", type=float, default=0.1)
    b.add_argument("--c", type=float, default=64.0, dest="const")
    b.add_argument("--quick", action="store_true")
    return p


def _exact_report(g, h, colored: bool) -> EstimateReport:
    t0 = time.perf_counter()
    d = decompose(h)
    est = target_count(g, h, colored)
    return EstimateReport(
        estimate=float(est),
        f=d.f_colored if colored else d.f,
        rho=d.rho,
        rounds=0,
        k_used=0,
        fallback_used=True,
        counts=QueryCounts(pair=g.m),
        time_ms=int(round((time.perf_counter() - t0) * 1000)),
    )


def _cmd_count(a) -> int:
    g, h = load_graph(a.graph), load_graph(a.pattern)
    if a.exact:
        decompose(h)
        rep = _exact_report(g, h, a.colored)
    else:
        cfg = EstimationConfig(
            eps=a.eps, c=a.const, rounds=a.rounds, budget_factor=a.budget, seed=a.seed,
            colored=a.colored, star_fast=a.star_fast, h_hint=a.hint,
        )
        rep = count_subgraph(g, h, cfg)
        for step in rep.h_trace:
            med = "exact" if step.fallback else step.median
            print(f"h={step.h:.6g} k={step.k} median={med}", file=sys.stderr)
    print(rep.line())
    return 0


def _emit_graph(a, graph, truth: Optional[int]) -> None:
    text = format_graph(graph)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"truth={truth}" if truth is not None else f"n={graph.n} m={graph.m}")
    else:
        # the ground truth rides along as a comment so the output stays loadable
        sys.stdout.write(text)
        print(f"# truth={truth}" if truth is not None else f"# n={graph.n} m={graph.m}")


def _cmd_gen(a) -> int:
    truth = None
    if a.kind == "disj":
        inst = gen_disjointness(a.K, a.k, a.hit, seed=a.seed)
        graph = inst.graph
        if not a.no_truth:
            truth = target_count(graph, cycle(2 * a.k + 1))
    elif a.kind == "join":
        inst = gen_join_lowerbound(load_graph(a.pattern), a.m, a.which, seed=a.seed)
        graph = inst.graph
        if a.pattern_out:
            with open(a.pattern_out, "w", encoding="utf-8") as fh:
                fh.write(format_graph(inst.pattern))
        if not a.no_truth:
            truth = target_count(graph, inst.pattern, colored=True)
    elif a.kind == "gnm":
        graph = gen_random(a.n, a.m, seed=a.seed)
    else:
        h = load_graph(a.pattern)
        graph = gen_planted_gnm(a.n, a.m, h, a.copies, seed=a.seed, attach=a.attach)
        if not a.no_truth:
            truth = target_count(graph, h)
    _emit_graph(a, graph, truth)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "count":
            return _cmd_count(args)
        if args.command == "exact":
            g, h = load_graph(args.graph), load_graph(args.pattern)
            print(exact_count(g, h, colored=args.colored).line())
            return 0
        if args.command == "decompose":
            print(decompose(load_graph(args.pattern)).describe())
            return 0
        if args.command == "gen":
            return _cmd_gen(args)
        cfg = EstimationConfig(eps=args.eps, c=args.const, seed=args.seed)
        res = run_bench(args.suite, cfg, quick=args.quick)
        text = res.to_csv()
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
            print(f"suite={args.suite} rows={len(res.rows)} out={args.out}")
        else:
            sys.stdout.write(text)
        return 0
    except (GraphFormatError, OSError, ColorModeError, ValueError) as exc:
        if isinstance(exc, InfeasiblePatternError):
            print(f"infeasible pattern: {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BudgetExhaustedError, BudgetExceeded) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    raise SystemExit(main())
