"""Benchmark suites: CSV rows of (instance, exact count, estimate, queries, time)."""

from __future__ import annotations

import csv
import io
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .estimator import EstimationConfig, count_subgraph
from .graph import Graph, QuerySession
from .instances import (
    clique,
    cycle,
    fan_on_bipartite,
    figure1_pattern,
    gen_join_lowerbound,
    gen_planted,
    gen_random,
    star,
)
from .oracle import target_count
from .pattern import decompose
from .samplers import make_plan, subgraph_sampler_estimate

CSV_HEADER = ["instance", "n", "m", "pattern", "rho", "exact", "estimate", "rel_err", "q_total", "ms"]
SUITES = ("cliques", "odd-cycles", "stars", "figure1", "join")


@dataclass
class BenchRow:
    instance: str
    n: int
    m: int
    pattern: str
    rho: str
    exact: int
    estimate: float
    q_total: int
    ms: int
    fallback: bool = False

    @property
    def rel_err(self) -> float:
        if self.exact == 0:
            return 0.0 if self.estimate == 0 else math.inf
        return abs(self.estimate - self.exact) / self.exact

    def cells(self) -> list:
        return [self.instance, self.n, self.m, self.pattern, self.rho, self.exact,
                f"{self.estimate:.6g}", f"{self.rel_err:.4f}", self.q_total, self.ms]


@dataclass
class BenchResult:
    suite: str
    rows: list[BenchRow]
    notes: dict[str, str] = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow(r.cells())
        flagged = [r.instance for r in self.rows if r.fallback]
        if flagged:
            buf.write("# fallback=" + ";".join(flagged) + "\n")
        for key, val in self.notes.items():
            buf.write(f"# {key}={val}\n")
        return buf.getvalue()


def loglog_slope(xs: list[float], ys: list[float]) -> float:
    """Least-squares slope of log(y) against log(x)."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    sxx = sum((a - mx) ** 2 for a in lx)
    sxy = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    return sxy / sxx


def _run(name: str, g: Graph, h: Graph, pname: str, cfg: EstimationConfig) -> BenchRow:
    d = decompose(h)
    exact = target_count(g, h, cfg.colored)
    t0 = time.perf_counter()
    rep = count_subgraph(g, h, cfg)
    ms = int(round((time.perf_counter() - t0) * 1000))
    return BenchRow(name, g.n, g.m, pname, str(d.rho), exact, rep.estimate, rep.counts.total, ms, rep.fallback_used)


def _cliques(cfg: EstimationConfig, quick: bool) -> BenchResult:
    rows = []
    sizes = [(10, 45), (20, 120), (40, 400)] if quick else [(10, 45), (20, 120), (40, 400), (80, 1200)]
    for i, (n, m) in enumerate(sizes):
        g = clique(n) if m == n * (n - 1) // 2 else gen_random(n, m, seed=cfg.seed_or(0) + i)
        rows.append(_run(f"gnm-{n}-{m}", g, clique(3), "K3", cfg))
    rows.append(_run("K8", clique(8), clique(4), "K4", cfg))
    return BenchResult("cliques", rows)


def projected_queries(g: Graph, h: Graph, cfg: EstimationConfig, truth: int, draws: int) -> tuple[float, float]:
    """Sampling-path query cost when the m-query fallback is ignored.

    Runs ``draws`` real draws to measure the mean per-draw query count, then
    charges every geometric-search level from ``m**rho/2`` down to the first
    level at or below the profile count plus the one cross-check level.
    Returns ``(projected_queries, measured_mean)``.
    """
    d = decompose(h)
    plan = make_plan(h, d, cfg.colored)
    s = QuerySession(g, rng=random.Random(cfg.seed_or(0)))
    total = 0.0
    for _ in range(draws):
        total += subgraph_sampler_estimate(s, h, d, cfg.colored, plan)
    q_bar = s.counts.total / draws
    target = truth / (d.f_colored if cfg.colored else d.f)
    rounds = cfg.n_rounds(g.n)
    hval = float(g.m) ** float(d.rho) / 2
    spent = 0.0
    while True:
        spent += rounds * math.ceil(cfg.c * float(g.m) ** float(d.rho) / (cfg.eps**2 * hval)) * q_bar
        if hval <= target:
            break
        hval /= 2
    spent += rounds * math.ceil(cfg.c * float(g.m) ** float(d.rho) / (cfg.eps**2 * hval / 2)) * q_bar
    return spent, q_bar


def _odd_cycles(cfg: EstimationConfig, quick: bool) -> BenchResult:
    rows, counts, executed, projected = [], [], [], []
    fans = [10, 40, 160, 640]
    for s in fans:
        g = fan_on_bipartite(s, 2000, 500, seed=cfg.seed_or(0) + s)
        row = _run(f"fan-{s}", g, cycle(5), "C5", cfg)
        rows.append(row)
        counts.append(row.exact)
        executed.append(row.q_total)
        proj, _ = projected_queries(g, cycle(5), cfg, row.exact, 2000 if quick else 20000)
        projected.append(proj)
    notes = {
        "executed_slope": f"{loglog_slope(counts, executed):.3f}",
        "projected_slope": f"{loglog_slope(counts, projected):.3f}",
        "projected_queries": ";".join(f"{p:.3g}" for p in projected),
    }
    return BenchResult("odd-cycles", rows, notes)


def _stars(cfg: EstimationConfig, quick: bool) -> BenchResult:
    rows = [_run("K10", clique(10), star(2), "S2", cfg)]
    g = gen_random(60, 500, seed=cfg.seed_or(0))
    rows.append(_run("gnm-60-500", g, star(2), "S2", cfg))
    rows.append(_run("gnm-60-500", g, star(3), "S3", cfg))
    fast = EstimationConfig(**{**cfg.__dict__, "star_fast": True})
    rows.append(_run("K10-fast", clique(10), star(2), "S2", fast))
    return BenchResult("stars", rows)


def _figure1(cfg: EstimationConfig, quick: bool) -> BenchResult:
    h = figure1_pattern()
    rows = []
    for seed in ([1] if quick else [1, 2, 3]):
        g = gen_planted(clique(10), h, 1, seed=seed, attach=4)
        rows.append(_run(f"K10+H-{seed}", g, h, "figure1", cfg))
    return BenchResult("figure1", rows)


def _join(cfg: EstimationConfig, quick: bool) -> BenchResult:
    rows = []
    colored = EstimationConfig(**{**cfg.__dict__, "colored": True})
    for pname, h, m in [("K3", clique(3), 16), ("K3", clique(3), 64), ("C5", cycle(5), 16)]:
        for which in ("g0", "g1"):
            inst = gen_join_lowerbound(h, m, which, seed=cfg.seed_or(0))
            rows.append(_run(f"join-{pname}-{m}-{which}", inst.graph, inst.pattern, pname, colored))
    return BenchResult("join", rows)


_SUITES: dict[str, Callable[[EstimationConfig, bool], BenchResult]] = {
    "cliques": _cliques,
    "odd-cycles": _odd_cycles,
    "stars": _stars,
    "figure1": _figure1,
    "join": _join,
}


def run_bench(suite: str, cfg: Optional[EstimationConfig] = None, quick: bool = False) -> BenchResult:
    if suite not in _SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return _SUITES[suite](cfg or EstimationConfig(seed=0), quick)
