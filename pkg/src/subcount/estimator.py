"""High-probability (1±eps) estimation on top of single sampler draws.

Each round averages ``k = ceil(c * m**rho / (eps**2 * h))`` draws; the round
medians are amplified over ``R`` odd rounds; the lower bound ``h`` is found by
a downward geometric search. Whenever the required ``k`` reaches ``m`` the
whole edge set is read and the count is computed exactly instead.
"""

from __future__ import annotations

import math
import random
import statistics
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .embed import BudgetExceeded
from .graph import Graph, QueryCounts, QuerySession
from .oracle import target_count
from .pattern import Decomposition, InfeasiblePatternError, decompose
from .samplers import SamplerPlan, make_plan, subgraph_sampler_estimate

PILOT_DRAWS = 200


class ColorModeError(ValueError):
    """Colored counting requested without both inputs colored."""


class NotAStarError(ValueError):
    pass


class BudgetExhaustedError(RuntimeError):
    """Every amplification round exceeded its query budget."""


@dataclass
class EstimationConfig:
    eps: float = 0.1
    c: float = 64.0
    rounds: Optional[int] = None
    budget_factor: float = 10.0
    seed: Optional[int] = None
    colored: bool = False
    star_fast: bool = False
    h_hint: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if self.c < 1:
            raise ValueError("c must be >= 1")
        if self.rounds is not None and (self.rounds < 1 or self.rounds % 2 == 0):
            raise ValueError("rounds must be a positive odd integer")

    def seed_or(self, default: int) -> int:
        return default if self.seed is None else self.seed

    def n_rounds(self, n: int) -> int:
        if self.rounds is not None:
            return self.rounds
        r = math.ceil(12 * math.log(max(n, 2)))
        r = min(max(r, 9), 61)
        return r if r % 2 else r + 1


@dataclass
class HStep:
    h: float
    k: int
    median: Optional[float]
    rounds_ok: int
    fallback: bool = False


@dataclass
class EstimateReport:
    estimate: float
    f: Fraction
    rho: Fraction
    rounds: int
    k_used: int
    fallback_used: bool
    counts: QueryCounts
    time_ms: int
    h_trace: list[HStep] = field(default_factory=list)
    accepted_h: Optional[float] = None
    pilot_queries: int = 0
    mean_draw_queries: Optional[float] = None

    def line(self) -> str:
        c = self.counts
        return (
            f"estimate={self.estimate:.6g} f={_fmt(self.f)} rho={_fmt(self.rho)} rounds={self.rounds} "
            f"k={self.k_used} fallback={int(self.fallback_used)} q_degree={c.degree} "
            f"q_neighbor={c.neighbor} q_pair={c.pair} q_edge={c.edge_sample} time_ms={self.time_ms}"
        )


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def averaged_estimate(
    s: QuerySession,
    h: Graph,
    d: Decomposition,
    k: int,
    colored: bool = False,
    plan: Optional[SamplerPlan] = None,
    budget: Optional[float] = None,
) -> float:
    """Mean of ``k`` independent draws; raises BudgetExceeded past ``budget`` queries."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if plan is None:
        plan = make_plan(h, d, colored)
    start = s.counts.total
    total = 0.0
    for _ in range(k):
        total += subgraph_sampler_estimate(s, h, d, colored, plan)
        if budget is not None and s.counts.total - start > budget:
            raise BudgetExceeded(f"round exceeded {budget:.0f} queries")
    return total / k


class _Run:
    """State shared by one estimation call: sessions, counters, draw-count rule."""

    def __init__(self, g: Graph, h: Graph, cfg: EstimationConfig, d: Decomposition, fast_ell: Optional[int]):
        self.g, self.h, self.cfg, self.d = g, h, cfg, d
        self.plan = make_plan(h, d, cfg.colored)
        self.fast_ell = fast_ell
        self.counts = QueryCounts()
        self.base_seed = cfg.seed if cfg.seed is not None else random.SystemRandom().getrandbits(63)
        self.q_bar: Optional[float] = None
        self.pilot_queries = 0
        self.rounds = cfg.n_rounds(g.n)
        self.mrho = float(g.m) ** float(d.rho)

    def session(self, tag: str) -> QuerySession:
        return QuerySession(self.g, rng=random.Random(f"{self.base_seed}:{tag}"))

    def k_for(self, hval: float) -> int:
        c, eps, m = self.cfg.c, self.cfg.eps, self.g.m
        if self.fast_ell is not None:
            ell = self.fast_ell
            return math.ceil(c * 4 * ell ** (2 * ell) * m / (eps**2 * hval ** (1 / ell)))
        return math.ceil(c * self.mrho / (eps**2 * hval))

    def calibrate(self) -> float:
        if self.q_bar is None:
            s = self.session("pilot")
            for _ in range(PILOT_DRAWS):
                subgraph_sampler_estimate(s, self.h, self.d, self.cfg.colored, self.plan)
            self.pilot_queries = s.counts.total
            self.counts += s.counts
            self.q_bar = max(s.counts.total / PILOT_DRAWS, 1.0)
        return self.q_bar

    def exact(self) -> float:
        # reading the whole edge set is charged as m pair queries
        self.counts += QueryCounts(pair=self.g.m)
        return float(target_count(self.g, self.h, self.cfg.colored))

    def median_at(self, hval: float, k: int, tag: str) -> tuple[Optional[float], int]:
        budget = self.cfg.budget_factor * k * self.calibrate()
        results = []
        for r in range(self.rounds):
            s = self.session(f"{tag}:{r}")
            try:
                results.append(averaged_estimate(s, self.h, self.d, k, self.cfg.colored, self.plan, budget))
            except BudgetExceeded:
                pass
            self.counts += s.counts
        if not results:
            return None, 0
        if len(results) % 2 == 0:
            results.pop()
        return statistics.median(results), len(results)


def _check_modes(g: Graph, h: Graph, cfg: EstimationConfig) -> None:
    if cfg.colored and not (g.colored and h.colored):
        raise ColorModeError("colored counting needs a colored graph and a colored pattern")


def high_probability_estimate(
    g: Graph,
    h: Graph,
    cfg: EstimationConfig,
    hval: float,
    d: Optional[Decomposition] = None,
) -> EstimateReport:
    """Median-of-rounds estimate at a fixed lower bound ``hval`` on the profile count."""
    if hval < 1:
        raise ValueError("h must be >= 1")
    _check_modes(g, h, cfg)
    if d is None:
        d = decompose(h)
    t0 = time.perf_counter()
    run = _Run(g, h, cfg, d, None)
    return _finish_fixed(run, hval, t0)


def _finish_fixed(run: _Run, hval: float, t0: float) -> EstimateReport:
    d, g = run.d, run.g
    f = d.f_colored if run.cfg.colored else d.f
    k = run.k_for(hval)
    if k >= g.m:
        est = run.exact()
        return _report(run, est, f, k, True, [HStep(hval, k, None, 0, True)], hval, t0)
    med, ok = run.median_at(hval, k, "h0")
    if med is None:
        raise BudgetExhaustedError("all amplification rounds exceeded their query budget")
    return _report(run, float(f) * med, f, k, False, [HStep(hval, k, med, ok)], hval, t0)


def _report(run: _Run, est: float, f: Fraction, k: int, fallback: bool, trace, acc, t0) -> EstimateReport:
    return EstimateReport(
        estimate=max(est, 0.0),
        f=f,
        rho=run.d.rho,
        rounds=run.rounds,
        k_used=k,
        fallback_used=fallback,
        counts=run.counts,
        time_ms=int(round((time.perf_counter() - t0) * 1000)),
        h_trace=trace,
        accepted_h=acc,
        pilot_queries=run.pilot_queries,
        mean_draw_queries=run.q_bar,
    )


def _search(run: _Run, t0: float) -> EstimateReport:
    cfg, g, d = run.cfg, run.g, run.d
    f = d.f_colored if cfg.colored else d.f
    if g.m == 0:
        return _report(run, 0.0, f, 0, True, [], None, t0)
    if cfg.h_hint is not None:
        return _finish_fixed(run, max(float(cfg.h_hint), 1.0), t0)
    trace: list[HStep] = []
    hval = run.mrho / 2
    step = 0
    pending: Optional[tuple[float, float, int]] = None  # (h, median, k) awaiting the cross-check
    while True:
        k = run.k_for(hval) if hval >= 1 else g.m
        if hval < 1 or k >= g.m:
            est = run.exact()
            trace.append(HStep(hval, k, None, 0, True))
            return _report(run, est, f, k, True, trace, None, t0)
        med, ok = run.median_at(hval, k, f"h{step}")
        step += 1
        trace.append(HStep(hval, k, med, ok))
        if med is None:
            raise BudgetExhaustedError("all amplification rounds exceeded their query budget")
        if pending is not None:
            h_prev, med_prev, _ = pending
            scale = max(med, med_prev)
            if med >= hval and abs(med - med_prev) <= 2 * cfg.eps * scale:
                return _report(run, float(f) * med, f, k, False, trace, hval, t0)
            pending = None
        if med >= hval:
            pending = (hval, med, k)
        hval /= 2


def count_subgraph(g: Graph, h: Graph, cfg: EstimationConfig) -> EstimateReport:
    """Estimate the number of copies of ``h`` in ``g`` (colorful copies when ``cfg.colored``)."""
    _check_modes(g, h, cfg)
    d = decompose(h)
    if cfg.star_fast:
        return star_fast_count(g, h, cfg, d)
    t0 = time.perf_counter()
    return _search(_Run(g, h, cfg, d, None), t0)


def count_colorful(g: Graph, h: Graph, cfg: EstimationConfig) -> EstimateReport:
    if not (g.colored and h.colored):
        raise ColorModeError("colorful counting needs a colored graph and a colored pattern")
    cfg = EstimationConfig(**{**cfg.__dict__, "colored": True})
    return count_subgraph(g, h, cfg)


def star_fast_count(g: Graph, h: Graph, cfg: EstimationConfig, d: Optional[Decomposition] = None) -> EstimateReport:
    """Star counting with the sharper star variance bound driving the draw count."""
    _check_modes(g, h, cfg)
    if d is None:
        d = decompose(h)
    if d.o or d.s != 1 or d.cross_edges:
        raise NotAStarError("fast star mode needs a pattern that is a single star")
    t0 = time.perf_counter()
    return _search(_Run(g, h, cfg, d, len(d.stars[0][1])), t0)


__all__ = [
    "BudgetExhaustedError",
    "ColorModeError",
    "EstimateReport",
    "EstimationConfig",
    "HStep",
    "InfeasiblePatternError",
    "NotAStarError",
    "averaged_estimate",
    "count_colorful",
    "count_subgraph",
    "high_probability_estimate",
    "star_fast_count",
]
