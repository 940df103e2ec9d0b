"""Odd-cycle and star samplers and the recursive subgraph-sampler estimator.

A single draw walks the implicit sampler tree: every odd cycle of the
decomposition contributes a two-level block (k sampled edges, then ``t``
closing vertices), every star a two-node block (a degree-biased center, then a
uniform petal subset). The draw returns the product of node values along each
root-to-leaf path, averaged over siblings, times the leaf's profile weight.

Profile weight. With the pattern's slots fixed, a profile R can host several
distinct copies when cross edges are asymmetric, and a fixed labelling can
miss copies that use a different arrangement inside a slot. The weight used
here is the number of slot-wise maps (rotations/reflections of a cycle,
petal permutations of a star, the flip of a single edge) under which every
pattern edge lands on a present edge, divided by the number of such maps from
the pattern onto itself. That makes ``sum_R weight(R) * f = #H`` hold for
every pattern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .graph import Graph, QueryError, QuerySession, ceil_ratio_sqrt
from .pattern import Decomposition, count_slot_maps, slot_automorphisms, slot_permutations


@dataclass
class CycleProfile:
    """Oriented edges ``(u_i, v_i)`` and the closing vertex ``w``."""

    edges: tuple[tuple[int, int], ...]
    w: int

    @property
    def vertices(self) -> tuple[int, ...]:
        out: list[int] = []
        for u, v in self.edges:
            out += [u, v]
        out.append(self.w)
        return tuple(out)


@dataclass
class StarProfile:
    center: int
    petals: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.center, *self.petals)


@dataclass
class SubgraphProfile:
    cycles: list[CycleProfile]
    stars: list[StarProfile]

    def slot_images(self) -> list[tuple[int, ...]]:
        return [c.vertices for c in self.cycles] + [s.vertices for s in self.stars]


@dataclass
class CycleBlock:
    edges: tuple[tuple[int, int], ...]
    d_star: int
    t: int
    ws: list[int]
    root_value: float


@dataclass
class StarBlock:
    center: int
    degree: int
    petals: Optional[tuple[int, ...]]
    root_value: float
    leaf_value: int

    @property
    def dead(self) -> bool:
        return self.petals is None


@dataclass
class TraceRecord:
    """One leaf reached by a draw: its profile, node values along the path, and its weight."""

    images: list[tuple[int, ...]]
    values: list[float]
    weight: int


class _DegreeCache:
    """Per-draw memo so that one vertex's degree is queried at most once per path."""

    __slots__ = ("s", "d")

    def __init__(self, s: QuerySession):
        self.s = s
        self.d: dict[int, int] = {}

    def __call__(self, v: int) -> int:
        d = self.d.get(v)
        if d is None:
            d = self.d[v] = self.s.degree_query(v)
        return d


def _prec(deg: Callable[[int], int], u: int, v: int) -> bool:
    return (deg(u), u) < (deg(v), v)


# --- block samplers ---------------------------------------------------------


def _sample_cycle_edges(s: QuerySession, k: int, deg: Callable[[int], int]):
    edges = []
    for i in range(k):
        u, v, _ = s.edge_sample_query()
        if i == 0:
            if _prec(deg, v, u):
                u, v = v, u
        elif s.randrange(2):
            u, v = v, u
        edges.append((u, v))
    return tuple(edges)


def sample_odd_cycle(s: QuerySession, k: int) -> CycleBlock:
    """Sample a full cycle block: k oriented edges then ``t`` closing vertices."""
    if k < 1:
        raise ValueError("cycle half-length must be >= 1")
    if s.m == 0:
        raise QueryError("cannot sample from an empty graph")
    deg = _DegreeCache(s)
    edges = _sample_cycle_edges(s, k, deg)
    u1 = edges[0][0]
    d_star = deg(u1)
    t = ceil_ratio_sqrt(d_star, s.m)
    ws = [s.neighbor_query(u1, s.randrange(d_star)) for _ in range(t)]
    return CycleBlock(edges, d_star, t, ws, (2 * s.m) ** k / 2)


def _sample_subset(s: QuerySession, d: int, ell: int) -> list[int]:
    # sequential draws without replacement; the j-th draw indexes the still-unchosen slots
    chosen: list[int] = []
    for j in range(ell):
        r = s.randrange(d - j)
        for c in sorted(chosen):
            if c <= r:
                r += 1
        chosen.append(r)
    return chosen


def sample_star(s: QuerySession, ell: int) -> StarBlock:
    """Degree-biased center, then a uniform ``ell``-subset of its neighbors."""
    if ell < 1:
        raise ValueError("star needs at least one petal")
    a, b, _ = s.edge_sample_query()
    v = b if s.randrange(2) else a
    d = s.degree_query(v)
    root = 2 * s.m / d
    if d < ell:
        return StarBlock(v, d, None, root, 0)
    petals = tuple(s.neighbor_query(v, i) for i in _sample_subset(s, d, ell))
    return StarBlock(v, d, petals, root, math.comb(d, ell))


# --- validity predicates ----------------------------------------------------


def _session_deg(s) -> Callable[[int], int]:
    if isinstance(s, _DegreeCache):
        return s
    if isinstance(s, QuerySession):
        return _DegreeCache(s)
    if isinstance(s, Graph):
        return s.degree
    raise TypeError("expected a Graph or QuerySession")


def _session_pair(s) -> Callable[[int, int], Optional[int]]:
    if isinstance(s, _DegreeCache):
        s = s.s
    if isinstance(s, QuerySession):
        return s.pair_color_query
    g = s

    def lookup(u: int, v: int) -> Optional[int]:
        return g.color(u, v) if g.has_edge(u, v) else None

    return lookup


def forms_cycle(access, p: CycleProfile) -> bool:
    """Whether ``p`` is the canonical profile of an odd cycle present in the graph.

    ``access`` is a Graph (free lookups) or a QuerySession (counted queries).
    The edges ``(u_i, v_i)`` and ``(w, u_1)`` are taken as known; ``(v_i, u_{i+1})``
    and ``(v_k, w)`` are verified.
    """
    deg = _session_deg(access)
    pair = _session_pair(access)
    verts = p.vertices
    if len(set(verts)) != len(verts):
        return False
    u1, v1 = p.edges[0]
    if not _prec(deg, v1, p.w):
        return False
    key_u1 = (deg(u1), u1)
    for x in verts[1:]:
        if (deg(x), x) < key_u1:
            return False
    k = len(p.edges)
    for i in range(k):
        nxt = p.edges[i + 1][0] if i + 1 < k else p.w
        if pair(p.edges[i][1], nxt) is None:
            return False
    return True


def forms_star(access, p: StarProfile) -> bool:
    """Distinct petals, center not a petal, and for one petal ``center ≺ petal``.

    Membership of petals in the center's neighborhood is guaranteed by the
    sampler; when ``access`` is a Graph it is also verified.
    """
    w = p.petals
    if len(set(w)) != len(w) or p.center in w:
        return False
    if isinstance(access, Graph) and not all(access.has_edge(p.center, x) for x in w):
        return False
    if len(w) == 1:
        return _prec(_session_deg(access), p.center, w[0])
    return True


@dataclass
class SamplerPlan:
    """Precomputed per-pattern data for the sampler and the leaf check."""

    h: Graph
    d: Decomposition
    colored: bool
    cycle_k: list[int]
    star_ell: list[int]
    perms: list
    aut_slot: int
    trivial_weight: bool = field(init=False)

    def __post_init__(self):
        # without cross edges or colors every slot map is valid, so the weight is 1
        self.trivial_weight = not self.d.cross_edges and not self.colored


def make_plan(h: Graph, d: Decomposition, colored: bool = False) -> SamplerPlan:
    return SamplerPlan(
        h=h,
        d=d,
        colored=colored,
        cycle_k=[(len(c) - 1) // 2 for c in d.cycles],
        star_ell=[len(p) for _, p in d.stars],
        perms=slot_permutations(d),
        aut_slot=slot_automorphisms(h, d, colored),
    )


def profile_weight(access, plan: SamplerPlan, images: Sequence[Sequence[int]]) -> int:
    """Number of distinct copies hosted by a profile whose slots already form."""
    flat = [v for img in images for v in img]
    if len(set(flat)) != len(flat):
        return 0
    if plan.trivial_weight:
        return 1
    pair = _session_pair(access)
    cache: dict[tuple[int, int], Optional[int]] = {}

    def lookup(u: int, v: int) -> Optional[int]:
        key = (u, v) if u < v else (v, u)
        if key not in cache:
            cache[key] = pair(u, v)
        return cache[key]

    return count_slot_maps(plan.h, plan.d, images, lookup, plan.colored, plan.perms) // plan.aut_slot


def forms_copy(access, h: Graph, d: Decomposition, r: SubgraphProfile, colored: bool = False,
               plan: Optional[SamplerPlan] = None) -> bool:
    """Whether the profile's slots form their components and jointly host a copy of ``h``."""
    if plan is None:
        plan = make_plan(h, d, colored)
    if len(r.cycles) != d.o or len(r.stars) != d.s:
        raise ValueError("profile arity does not match the decomposition")
    for cp, k in zip(r.cycles, plan.cycle_k):
        if len(cp.edges) != k or not forms_cycle(access, cp):
            return False
    for sp, ell in zip(r.stars, plan.star_ell):
        if len(sp.petals) != ell or not forms_star(access, sp):
            return False
    return profile_weight(access, plan, r.slot_images()) > 0


# --- the recursive estimator ------------------------------------------------


def subgraph_sampler_estimate(
    s: QuerySession,
    h: Graph,
    d: Decomposition,
    colored: bool = False,
    plan: Optional[SamplerPlan] = None,
    trace: Optional[list] = None,
) -> float:
    """One draw of the unbiased estimator for the weighted profile count of ``h``."""
    if s.m == 0:
        raise QueryError("cannot sample from an empty graph")
    if plan is None:
        plan = make_plan(h, d, colored)
    o = d.o
    n_slots = o + d.s
    m = s.m
    two_m = 2 * m
    images: list[tuple[int, ...]] = []
    used: set[int] = set()
    values: list[float] = []
    deg = _DegreeCache(s)

    def leaf() -> float:
        w = profile_weight(s, plan, images)
        if trace is not None:
            trace.append(TraceRecord(list(images), list(values), w))
        return float(w)

    def rec(i: int) -> float:
        if i == n_slots:
            return leaf()
        if i < o:
            k = plan.cycle_k[i]
            edges = _sample_cycle_edges(s, k, deg)
            u1 = edges[0][0]
            d_star = deg(u1)
            t = ceil_ratio_sqrt(d_star, m)
            root = two_m**k / 2
            total = 0.0
            for _ in range(t):
                w = s.neighbor_query(u1, s.randrange(d_star))
                prof = CycleProfile(edges, w)
                verts = prof.vertices
                if used.isdisjoint(verts) and forms_cycle(deg, prof):
                    images.append(verts)
                    used.update(verts)
                    values.extend((root, float(d_star)))
                    total += d_star * rec(i + 1)
                    del values[-2:]
                    used.difference_update(verts)
                    images.pop()
            return root * total / t
        ell = plan.star_ell[i - o]
        a, b, _ = s.edge_sample_query()
        v = b if s.randrange(2) else a
        dv = deg(v)
        if dv < ell or v in used:
            return 0.0
        petals = tuple(s.neighbor_query(v, j) for j in _sample_subset(s, dv, ell))
        prof = StarProfile(v, petals)
        if not used.isdisjoint(petals) or not forms_star(deg, prof):
            return 0.0
        root, lv = two_m / dv, math.comb(dv, ell)
        images.append(prof.vertices)
        used.update(prof.vertices)
        values.extend((root, float(lv)))
        y = root * lv * rec(i + 1)
        del values[-2:]
        used.difference_update(prof.vertices)
        images.pop()
        return y

    return rec(0)


# --- exact expectation by enumerating the sampler's randomness --------------


class ScriptedChooser:
    """Stand-in RNG that replays a fixed prefix of choices and then answers 0."""

    def __init__(self, prefix: Sequence[int]):
        self.prefix = list(prefix)
        self.pos = 0
        self.ranges: list[int] = []

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("empty range")
        r = self.prefix[self.pos] if self.pos < len(self.prefix) else 0
        self.pos += 1
        self.ranges.append(n)
        return r


def enumerate_draws(draw: Callable[[QuerySession], float], g: Graph, limit: int = 1_000_000):
    """Yield ``(probability, value)`` for every random-choice sequence of ``draw``.

    ``draw`` must take all randomness from ``session.randrange``; probabilities
    are exact fractions.
    """
    from fractions import Fraction

    prefix: list[int] = []
    for _ in range(limit):
        chooser = ScriptedChooser(prefix)
        s = QuerySession(g, rng=chooser)
        y = draw(s)
        ranges = chooser.ranges
        choices = prefix + [0] * (len(ranges) - len(prefix))
        p = Fraction(1)
        for r in ranges:
            p /= r
        yield p, y
        # advance the odometer from the deepest choice
        j = len(choices) - 1
        while j >= 0 and choices[j] + 1 >= ranges[j]:
            j -= 1
        if j < 0:
            return
        prefix = choices[:j] + [choices[j] + 1]
    raise RuntimeError(f"randomness enumeration exceeded {limit} paths")
