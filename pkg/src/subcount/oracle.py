"""Exact ground truth on desk-scale inputs: subgraph, profile and colorful counts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .embed import BudgetExceeded, automorphism_count, count_embeddings
from .graph import Graph
from .pattern import Decomposition, decompose, sub_pattern, sub_pattern_rho
from .samplers import (
    CycleProfile,
    StarProfile,
    forms_cycle,
    forms_star,
    make_plan,
    profile_weight,
)

MAX_EXACT_PATTERN = 10
DEFAULT_NODE_BUDGET = 50_000_000


@dataclass(frozen=True)
class ExactCount:
    subgraph_count: int
    profile_count: int
    colorful_count: Optional[int] = None

    def line(self) -> str:
        out = f"count={self.subgraph_count} profiles={self.profile_count}"
        if self.colorful_count is not None:
            out += f" colorful={self.colorful_count}"
        return out


def _copies(h: Graph, g: Graph, colored: bool, budget: Optional[int]) -> int:
    emb = count_embeddings(h, g, colored=colored, budget=budget)
    aut = automorphism_count(h, colored=colored)
    assert emb % aut == 0, "embeddings come in automorphism orbits"
    return emb // aut


def exact_count(
    g: Graph,
    h: Graph,
    colored: bool = False,
    d: Optional[Decomposition] = None,
    budget: Optional[int] = DEFAULT_NODE_BUDGET,
) -> ExactCount:
    """Copies of ``h`` in ``g`` (each subgraph once), its profile count, and colorful copies.

    ``profile_count`` refers to the mode selected by ``colored``: the weighted
    number of profiles hosting a color-matching copy when colored.
    """
    if h.n > MAX_EXACT_PATTERN:
        raise ValueError(f"exact counting supports patterns up to {MAX_EXACT_PATTERN} vertices")
    if d is None:
        d = decompose(h)
    sub = _copies(h, g, False, budget)
    colorful = _copies(h, g, True, budget) if colored else None
    if colored:
        prof = Fraction(colorful) / d.f_colored
    else:
        prof = Fraction(sub) / d.f
    assert prof.denominator == 1
    return ExactCount(sub, int(prof), colorful)


def target_count(g: Graph, h: Graph, colored: bool = False, budget: Optional[int] = DEFAULT_NODE_BUDGET) -> int:
    """The quantity an estimator approximates: copies, or colorful copies when ``colored``."""
    return _copies(h, g, colored, budget)


def _pow_le(count: int, base: int, rho: Fraction) -> bool:
    # count <= base**rho with rho a half-integer, in exact integers
    return count**rho.denominator <= base**rho.numerator


def _agm_holds(p: Graph, g: Graph, rho: Fraction, literal: bool) -> bool:
    if literal:
        return _pow_le(_copies(p, g, False, DEFAULT_NODE_BUDGET), g.m, rho)
    # each undirected edge is two tuples of the edge relation
    return _pow_le(count_embeddings(p, g, budget=DEFAULT_NODE_BUDGET), 2 * g.m, rho)


def agm_check(g: Graph, h: Graph, d: Optional[Decomposition] = None, literal: bool = False) -> bool:
    """AGM bound for ``h`` and every slot-induced sub-pattern.

    By default checks the constant-exact form: embeddings ``<= (2m)**rho``.
    ``literal=True`` checks copies ``<= m**rho`` instead, which is only true up
    to a constant and fails for small-automorphism patterns in near-cliques.
    """
    if d is None:
        d = decompose(h)
    if not _agm_holds(h, g, d.rho, literal):
        return False
    for a in range(d.o + 1):
        for cyc in itertools.combinations(range(d.o), a):
            for b in range(d.s + 1):
                for st in itertools.combinations(range(d.s), b):
                    if not cyc and not st:
                        continue
                    if not _agm_holds(sub_pattern(h, d, cyc, st), g, sub_pattern_rho(d, cyc, st), literal):
                        return False
    return True


def _cycle_profiles(g: Graph, k: int) -> list[tuple[int, ...]]:
    """Vertex sequences of every cycle profile of length ``2k+1`` that forms."""
    out = []
    for a, b in g.edges:
        for u1, v1 in ((a, b), (b, a)):
            if g.order_key(v1) < g.order_key(u1):
                continue

            def extend(path: list[int]):
                if len(path) == 2 * k:
                    for w in g.adjacency[u1]:
                        edges = tuple((path[2 * i], path[2 * i + 1]) for i in range(k))
                        p = CycleProfile(edges, w)
                        if forms_cycle(g, p):
                            out.append(p.vertices)
                    return
                for u in g.adjacency[path[-1]]:
                    for v in g.adjacency[u]:
                        extend(path + [u, v])

            extend([u1, v1])
    return out


def _star_profiles(g: Graph, ell: int) -> list[tuple[int, ...]]:
    out = []
    for v in range(g.n):
        for petals in itertools.combinations(g.adjacency[v], ell):
            if forms_star(g, StarProfile(v, petals)):
                out.append((v, *petals))
    return out


def exact_profile_enumeration(
    g: Graph,
    h: Graph,
    d: Optional[Decomposition] = None,
    colored: bool = False,
    budget: int = 10_000_000,
) -> int:
    """Weighted number of profiles hosting a copy, by listing every profile."""
    if d is None:
        d = decompose(h)
    plan = make_plan(h, d, colored)
    slots = [_cycle_profiles(g, (len(c) - 1) // 2) for c in d.cycles]
    slots += [_star_profiles(g, len(p)) for _, p in d.stars]
    images: list[tuple[int, ...]] = []
    used: set[int] = set()
    visited = 0

    def rec(i: int) -> int:
        nonlocal visited
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f"profile enumeration exceeded {budget} nodes")
        if i == len(slots):
            return profile_weight(g, plan, images)
        total = 0
        for img in slots[i]:
            if used.isdisjoint(img):
                images.append(img)
                used.update(img)
                total += rec(i + 1)
                used.difference_update(img)
                images.pop()
        return total

    return rec(0)
