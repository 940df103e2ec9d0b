"""Fractional edge cover of a pattern and its odd-cycle/star decomposition.

The optimum is found exactly: a minimum integral edge cover of the bipartite
double cover (maximum matching plus one edge per exposed vertex) halves into a
half-integral optimum for the pattern. Cycle canceling, odd-cycle isolation
and leaf-to-root rounding then reshape its support into vertex-disjoint odd
cycles (every edge 1/2) and stars (every edge 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .embed import automorphism_count
from .graph import Graph

HALF = Fraction(1, 2)
MAX_PATTERN_VERTICES = 16

Edge = tuple[int, int]


class InfeasiblePatternError(ValueError):
    """Pattern has an isolated vertex (or no vertices), so no edge cover exists."""


def _key(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass
class EdgeCoverSolution:
    x: dict[Edge, Fraction]
    objective: Fraction

    def coverage(self, h: Graph) -> list[Fraction]:
        cov = [Fraction(0)] * h.n
        for (a, b), val in self.x.items():
            cov[a] += val
            cov[b] += val
        return cov

    def is_feasible(self, h: Graph) -> bool:
        return all(c >= 1 for c in self.coverage(h))


@dataclass
class Decomposition:
    """Odd cycles and stars covering every pattern vertex exactly once.

    ``cycles[i]`` is the cyclic vertex sequence ``(c0, ..., c_2k)``; ``stars[j]``
    is ``(center, petals)``. Sampler slots follow the same order: cycles first,
    then stars.
    """

    cycles: list[tuple[int, ...]]
    stars: list[tuple[int, tuple[int, ...]]]
    cross_edges: list[Edge]
    cover: dict[Edge, Fraction]
    n_vertices: int
    f: Fraction = Fraction(1)
    f_colored: Optional[Fraction] = None

    @property
    def rho_cycle(self) -> list[Fraction]:
        return [Fraction(len(c) - 1, 2) + HALF for c in self.cycles]

    @property
    def rho_star(self) -> list[Fraction]:
        return [Fraction(len(p)) for _, p in self.stars]

    @property
    def rho(self) -> Fraction:
        return sum(self.rho_cycle, Fraction(0)) + sum(self.rho_star, Fraction(0))

    @property
    def o(self) -> int:
        return len(self.cycles)

    @property
    def s(self) -> int:
        return len(self.stars)

    @property
    def depth(self) -> int:
        return 2 * self.o + 2 * self.s

    def component_vertices(self) -> list[tuple[int, ...]]:
        """Vertex sequence of every slot: cycles as ``c0..c_2k``, stars as center then petals."""
        return [tuple(c) for c in self.cycles] + [(c, *p) for c, p in self.stars]

    def component_edges(self) -> list[Edge]:
        out = []
        for cyc in self.cycles:
            L = len(cyc)
            out.extend(_key(cyc[i], cyc[(i + 1) % L]) for i in range(L))
        for c, petals in self.stars:
            out.extend(_key(c, p) for p in petals)
        return out

    def describe(self) -> str:
        parts = [f"rho={_fmt(self.rho)}", f"f={_fmt(self.f)}"]
        parts += ["cycle=" + ",".join(map(str, c)) for c in self.cycles]
        parts += [f"star={c}:" + ",".join(map(str, p)) for c, p in self.stars]
        return " ".join(parts)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _check_pattern(h: Graph) -> None:
    if h.n == 0:
        raise InfeasiblePatternError("pattern has no vertices")
    isolated = [a for a in range(h.n) if h.degree(a) == 0]
    if isolated:
        raise InfeasiblePatternError(f"pattern has isolated vertices {isolated}")


def _max_matching(adj: Sequence[Sequence[int]], n_right: int) -> tuple[list[int], list[int]]:
    """Augmenting-path bipartite matching; left vertices scanned in id order."""
    match_l = [-1] * len(adj)
    match_r = [-1] * n_right

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_r[v] == -1 or augment(match_r[v], seen):
                match_l[u] = v
                match_r[v] = u
                return True
        return False

    for u in range(len(adj)):
        augment(u, [False] * n_right)
    return match_l, match_r


def solve_fractional_edge_cover(h: Graph) -> EdgeCoverSolution:
    """Half-integral optimum of min sum x_e s.t. every vertex is covered at least once."""
    _check_pattern(h)
    # double cover: left copy a^L adjacent to right copy b^R for every edge {a, b}
    match_l, match_r = _max_matching(h.adjacency, h.n)
    picked: set[tuple[int, int]] = {(a, b) for a, b in enumerate(match_l) if b != -1}
    for a in range(h.n):
        if match_l[a] == -1:
            picked.add((a, h.adjacency[a][0]))
        if match_r[a] == -1:
            picked.add((h.adjacency[a][0], a))
    x: dict[Edge, Fraction] = {e: Fraction(0) for e in h.edges}
    for a, b in picked:
        x[_key(a, b)] += HALF
    return EdgeCoverSolution(x, sum(x.values(), Fraction(0)))


# --- support reshaping -------------------------------------------------------


def _coverage(x: dict[Edge, Fraction], n: int) -> list[Fraction]:
    cov = [Fraction(0)] * n
    for (a, b), val in x.items():
        cov[a] += val
        cov[b] += val
    return cov


def _tighten(x: dict[Edge, Fraction], n: int) -> None:
    # values above 1 and removable halves only occur off-optimum; never fires on an optimal x
    for e in x:
        if x[e] > 1:
            x[e] = Fraction(1)
    changed = True
    while changed:
        changed = False
        cov = _coverage(x, n)
        for (a, b), val in sorted(x.items()):
            if val > 0 and cov[a] - HALF >= 1 and cov[b] - HALF >= 1:
                x[(a, b)] = val - HALF
                changed = True
                break


def _support_adj(x: dict[Edge, Fraction], n: int) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for (a, b), val in sorted(x.items()):
        if val > 0:
            adj[a].append(b)
            adj[b].append(a)
    return adj


def _components(adj: list[list[int]]) -> list[list[int]]:
    seen = [False] * len(adj)
    comps = []
    for s in range(len(adj)):
        if seen[s] or not adj[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def _is_isolated_odd_cycle(comp: list[int], adj: list[list[int]]) -> bool:
    return len(comp) % 2 == 1 and len(comp) >= 3 and all(len(adj[u]) == 2 for u in comp)


def _find_cycle(comp: list[int], adj: list[list[int]]) -> Optional[list[int]]:
    """Some cycle inside a connected component, as a vertex list, or None for a tree."""
    parent = {comp[0]: -1}
    depth = {comp[0]: 0}
    stack = [comp[0]]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v == parent[u]:
                continue
            if v in parent:
                # back edge u-v closes a cycle through their common ancestor
                pu, pv = [u], [v]
                a, b = u, v
                while depth[a] > depth[b]:
                    a = parent[a]
                    pu.append(a)
                while depth[b] > depth[a]:
                    b = parent[b]
                    pv.append(b)
                while a != b:
                    a, b = parent[a], parent[b]
                    pu.append(a)
                    pv.append(b)
                return pu + pv[-2::-1]
            parent[v] = u
            depth[v] = depth[u] + 1
            stack.append(v)
    return None


def _cycle_edges(cyc: Sequence[int]) -> list[Edge]:
    L = len(cyc)
    return [_key(cyc[i], cyc[(i + 1) % L]) for i in range(L)]


def _cancel_cycles(x: dict[Edge, Fraction], n: int) -> None:
    while True:
        _tighten(x, n)
        adj = _support_adj(x, n)
        target = None
        for comp in _components(adj):
            if _is_isolated_odd_cycle(comp, adj):
                continue
            cyc = _find_cycle(comp, adj)
            if cyc is not None:
                target = cyc
                break
        if target is None:
            return
        edges = _cycle_edges(target)
        if len(target) % 2 == 0:
            minus = edges[1::2]
            delta = min(x[e] for e in minus)
            for e in edges[0::2]:
                x[e] += delta
            for e in minus:
                x[e] -= delta
            continue
        # odd cycle touching another support edge: shift the halves onto that edge
        on_cycle = set(edges)
        for i, a in enumerate(target):
            extra = [b for b in adj[a] if _key(a, b) not in on_cycle]
            if extra:
                break
        else:  # pragma: no cover - excluded by the isolated-cycle test above
            raise AssertionError("odd cycle without attachment")
        assert all(x[e] == HALF for e in edges), "optimal cover has 1/2 on every cycle edge"
        rotated = target[i:] + target[:i]
        redges = _cycle_edges(rotated)
        for j, e in enumerate(redges):
            x[e] += -HALF if j % 2 == 0 else HALF
        x[_key(a, extra[0])] += HALF


def _round_forests(x: dict[Edge, Fraction], n: int) -> None:
    while True:
        _tighten(x, n)
        adj = _support_adj(x, n)
        progressed = False
        for comp in _components(adj):
            if _is_isolated_odd_cycle(comp, adj) or _is_star(comp, adj):
                continue
            root = min(u for u in comp if len(adj[u]) == 1)
            parent = {root: -1}
            depth = {root: 0}
            queue = [root]
            for u in queue:
                for v in adj[u]:
                    if v not in parent:
                        parent[v] = u
                        depth[v] = depth[u] + 1
                        queue.append(v)
            leaf = max(comp, key=lambda u: (depth[u], -u))
            p = parent[leaf]
            g = parent[p]
            gg = parent[g]
            f_edge, z_edge = _key(p, g), _key(g, gg)
            x[z_edge] += x[f_edge]
            x[f_edge] = Fraction(0)
            progressed = True
            break
        if not progressed:
            return


def _is_star(comp: list[int], adj: list[list[int]]) -> bool:
    if len(comp) == 2:
        return True
    centers = [u for u in comp if len(adj[u]) == len(comp) - 1]
    return len(centers) == 1 and all(len(adj[u]) == 1 for u in comp if u != centers[0])


def _canonical_cycle(comp: list[int], adj: list[list[int]]) -> tuple[int, ...]:
    start = min(comp)
    seq = [start, min(adj[start])]
    while len(seq) < len(comp):
        a, b = adj[seq[-1]]
        seq.append(b if a == seq[-2] else a)
    return tuple(seq)


def decompose(h: Graph, colored: Optional[bool] = None) -> Decomposition:
    """Decompose ``h`` into vertex-disjoint odd cycles and stars of an optimal cover.

    ``colored`` selects whether ``f`` is computed for color-preserving copies;
    by default it follows ``h.colored``. Both variants are always stored.
    """
    if h.n > MAX_PATTERN_VERTICES:
        raise ValueError(f"pattern exceeds {MAX_PATTERN_VERTICES} vertices")
    sol = solve_fractional_edge_cover(h)
    x = dict(sol.x)
    _cancel_cycles(x, h.n)
    _round_forests(x, h.n)
    _tighten(x, h.n)

    adj = _support_adj(x, h.n)
    cycles, stars = [], []
    for comp in _components(adj):
        if _is_isolated_odd_cycle(comp, adj):
            cycles.append(_canonical_cycle(comp, adj))
        elif _is_star(comp, adj):
            if len(comp) == 2:
                center, petals = comp[0], (comp[1],)
            else:
                center = next(u for u in comp if len(adj[u]) == len(comp) - 1)
                petals = tuple(u for u in comp if u != center)
            stars.append((center, petals))
        else:  # pragma: no cover
            raise AssertionError(f"support component {comp} is neither odd cycle nor star")
    cycles.sort(key=lambda c: (-len(c), min(c)))
    stars.sort(key=lambda s: (-len(s[1]), s[0]))

    cover = {e: v for e, v in x.items() if v > 0}
    comp_edges = set()
    for cyc in cycles:
        comp_edges.update(_cycle_edges(cyc))
    for c, petals in stars:
        comp_edges.update(_key(c, p) for p in petals)
    cross = sorted(e for e in h.edges if e not in comp_edges)
    d = Decomposition(cycles, stars, cross, cover, h.n)
    assert d.rho == sol.objective, "reshaping must preserve the optimum"
    d.f = normalization_factor(h, d, colored=False)
    d.f_colored = normalization_factor(h, d, colored=True) if h.colored else d.f
    if colored is None:
        colored = h.colored
    return d


# --- slot maps and profile multiplicity -------------------------------------


def slot_permutations(d: Decomposition) -> list[list[tuple[int, ...]]]:
    """Per slot, the position permutations mapping pattern positions onto profile positions.

    A cycle maps by any rotation/reflection of its cyclic sequence, a star with
    two or more petals fixes the center and permutes petals, and a single-edge
    star may be flipped.
    """
    perms: list[list[tuple[int, ...]]] = []
    for cyc in d.cycles:
        L = len(cyc)
        perms.append(
            [tuple((s + p) % L for p in range(L)) for s in range(L)]
            + [tuple((s - p) % L for p in range(L)) for s in range(L)]
        )
    for _, petals in d.stars:
        ell = len(petals)
        if ell == 1:
            perms.append([(0, 1), (1, 0)])
        else:
            perms.append([(0, *q) for q in itertools.permutations(range(1, ell + 1))])
    return perms


def count_slot_maps(
    h: Graph,
    d: Decomposition,
    images: Sequence[Sequence[int]],
    lookup: Callable[[int, int], Optional[int]],
    colored: bool,
    perms: Optional[list[list[tuple[int, ...]]]] = None,
) -> int:
    """Count maps pattern -> images, slot by slot, under which every pattern edge is present.

    ``images[i]`` lists the target vertices of slot ``i`` in profile order;
    ``lookup(u, v)`` returns the color of edge ``{u, v}`` or None if absent.
    Component edges are assumed present (the profile already forms its slot);
    their colors are still checked when ``colored``.
    """
    if perms is None:
        perms = slot_permutations(d)
    slots = d.component_vertices()
    slot_of = {}
    for i, verts in enumerate(slots):
        for a in verts:
            slot_of[a] = i
    comp_edges = set(d.component_edges())
    # edges to verify once slot i is placed: both endpoints in slots <= i
    checks: list[list[tuple[int, int, int, bool]]] = [[] for _ in slots]
    for a, b in h.edges:
        is_comp = (a, b) in comp_edges
        if is_comp and not colored:
            continue
        checks[max(slot_of[a], slot_of[b])].append((a, b, h.color(a, b), is_comp))
    image: dict[int, int] = {}

    def rec(i: int) -> int:
        if i == len(slots):
            return 1
        total = 0
        verts, target = slots[i], images[i]
        for perm in perms[i]:
            for p, a in enumerate(verts):
                image[a] = target[perm[p]]
            good = True
            for a, b, col, is_comp in checks[i]:
                got = lookup(image[a], image[b])
                if got is None or (colored and got != col):
                    good = False
                    break
            if good:
                total += rec(i + 1)
        return total

    return rec(0)


def slot_automorphisms(h: Graph, d: Decomposition, colored: bool = False) -> int:
    """Automorphisms of ``h`` mapping every slot onto itself."""

    def lookup(u: int, v: int) -> Optional[int]:
        return h.color(u, v) if h.has_edge(u, v) else None

    return count_slot_maps(h, d, d.component_vertices(), lookup, colored)


def normalization_factor(h: Graph, d: Decomposition, colored: bool = False) -> Fraction:
    """Ratio converting profile-weighted counts into subgraph counts.

    Its inverse is the total profile weight of ``h`` inside itself, which
    equals automorphisms over slot-preserving automorphisms.
    """
    return Fraction(slot_automorphisms(h, d, colored), automorphism_count(h, colored))


def sub_pattern_rho(d: Decomposition, cycles: Iterable[int], stars: Iterable[int]) -> Fraction:
    cycles, stars = list(cycles), list(stars)
    for i in cycles:
        if not 0 <= i < d.o:
            raise IndexError(f"cycle index {i} out of range [0, {d.o})")
    for j in stars:
        if not 0 <= j < d.s:
            raise IndexError(f"star index {j} out of range [0, {d.s})")
    rc, rs = d.rho_cycle, d.rho_star
    return sum((rc[i] for i in cycles), Fraction(0)) + sum((rs[j] for j in stars), Fraction(0))


def sub_pattern(h: Graph, d: Decomposition, cycles: Iterable[int], stars: Iterable[int]) -> Graph:
    """Subgraph of ``h`` induced on the chosen slots, relabelled to ``0..k-1``."""
    verts: list[int] = []
    for i in cycles:
        verts.extend(d.cycles[i])
    for j in stars:
        c, petals = d.stars[j]
        verts.append(c)
        verts.extend(petals)
    relabel = {a: i for i, a in enumerate(sorted(verts))}
    edges, colors = [], []
    for a, b in h.edges:
        if a in relabel and b in relabel:
            edges.append((relabel[a], relabel[b]))
            colors.append(h.color(a, b))
    return Graph(len(relabel), edges, colors if h.colored else None)
