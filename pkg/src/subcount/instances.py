"""Instance generators: layered disjointness graphs, join lower-bound pairs, random and planted graphs."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import Graph
from .pattern import HALF

# --- named patterns ----------------------------------------------------------


def clique(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n_vertices: int) -> Graph:
    return Graph(n_vertices, [(i, i + 1) for i in range(n_vertices - 1)])


def star(ell: int) -> Graph:
    """Center 0 with petals 1..ell."""
    return Graph(ell + 1, [(0, i) for i in range(1, ell + 1)])


def disjoint_union(*gs: Graph) -> Graph:
    edges, colors, off = [], [], 0
    colored = any(g.colored for g in gs)
    for g in gs:
        edges += [(u + off, v + off) for u, v in g.edges]
        colors += g.edge_colors()
        off += g.n
    return Graph(off, edges, colors if colored else None)


def figure1_pattern() -> Graph:
    """Triangle 0-1-2, two-petal star centered at 3 (petals 4, 5), edge 6-7, cross edges 0-3 and 3-6."""
    return Graph(8, [(0, 1), (1, 2), (0, 2), (3, 4), (3, 5), (6, 7), (0, 3), (3, 6)])


# --- layered set-disjointness graphs ----------------------------------------


@dataclass
class DisjInstance:
    K: int
    k: int
    X: dict[tuple[int, int], bool]
    Y: dict[tuple[int, int], bool]
    graph: Graph
    hit: Optional[tuple[int, int]] = None

    def vertex(self, layer: int, i: int) -> int:
        """Id of the ``i``-th vertex (0-based) of layer ``layer`` (1-based)."""
        return (layer - 1) * self.K + i


def gen_disjointness(K: int, k: int, hit: Optional[tuple[int, int]] = None, seed: Optional[int] = None) -> DisjInstance:
    """Layered graph that contains odd cycles ``C_{2k+1}`` iff the inputs intersect.

    Index pairs are unordered (``X`` and ``Y`` symmetric); the first two layers
    are joined by ``(u^1_i, v^2_i)`` plus two cross edges per non-intersecting
    pair, or two intra-layer edges for the intersecting pair.
    """
    if K < 4 or k < 1:
        raise ValueError("need K >= 4 and k >= 1")
    if hit is not None:
        i, j = hit
        if not (0 <= i < K and 0 <= j < K) or i == j:
            raise ValueError(f"hit index {hit} must be off-diagonal within [0, {K})")
        hit = (min(i, j), max(i, j))
    rng = random.Random(seed)
    X: dict[tuple[int, int], bool] = {}
    Y: dict[tuple[int, int], bool] = {}
    for p in itertools.combinations(range(K), 2):
        if p == hit:
            X[p] = Y[p] = True
        else:
            # arbitrary inputs subject to X and Y not meeting here
            r = rng.randrange(3)
            X[p], Y[p] = (r == 1), (r == 2)

    def vid(layer: int, i: int) -> int:
        return (layer - 1) * K + i

    edges: list[tuple[int, int]] = []
    for layer in range(2, k + 1):
        for a in range(K):
            for b in range(K):
                edges.append((vid(layer, a), vid(layer + 1, b)))
    for i in range(K):
        edges.append((vid(1, i), vid(2, i)))
    for (i, j) in itertools.combinations(range(K), 2):
        if X[(i, j)] and Y[(i, j)]:
            edges += [(vid(1, i), vid(1, j)), (vid(2, i), vid(2, j))]
        else:
            edges += [(vid(1, i), vid(2, j)), (vid(1, j), vid(2, i))]
    g = Graph((k + 1) * K, edges)
    return DisjInstance(K, k, X, Y, g, hit)


def is_bipartite(g: Graph) -> bool:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.adjacency[u]:
                if side[v] == -1:
                    side[v] = 1 - side[u]
                    stack.append(v)
                elif side[v] == side[u]:
                    return False
    return True


# --- join lower-bound pairs ---------------------------------------------------


def max_independent_fractional(h: Graph) -> tuple[Fraction, ...]:
    """A maximum ``y`` in ``{0, 1/2, 1}^V`` with ``y_a + y_b <= 1`` on every edge.

    Ties go to the first maximizer in lexicographic order over ``(1, 1/2, 0)``.
    """
    vals = (Fraction(1), HALF, Fraction(0))
    best, best_y = Fraction(-1), None
    for y in itertools.product(vals, repeat=h.n):
        if all(y[a] + y[b] <= 1 for a, b in h.edges):
            s = sum(y, Fraction(0))
            if s > best:
                best, best_y = s, y
    return best_y


def _int_power(m: int, y: Fraction) -> int:
    if y == 0:
        return 1
    if y == 1:
        return m
    r = math.isqrt(m)
    if y == HALF and r * r == m:
        return r
    raise ValueError(f"block size m^{y} is not an integer for m={m}")


@dataclass
class JoinInstance:
    m: int
    pattern: Graph
    y: tuple[Fraction, ...]
    f_star: tuple[int, int]
    blocks: list[list[int]]
    which: str
    graph: Graph
    e_star: Optional[tuple[int, int]] = None


def gen_join_lowerbound(h: Graph, m: int, which: str = "g0", seed: Optional[int] = None) -> JoinInstance:
    """Block blow-up of ``h``; ``g1`` recolors one edge between the tight-edge blocks to 1.

    The returned ``pattern`` is ``h`` colored 1 on the tight edge and 0 elsewhere.
    """
    which = which.lower()
    if which not in ("g0", "g1"):
        raise ValueError("which must be 'g0' or 'g1'")
    if h.m == 0:
        raise ValueError("pattern has no edges")
    y = max_independent_fractional(h)
    sizes = [_int_power(m, ya) for ya in y]
    f_star = min(e for e in h.edges if y[e[0]] + y[e[1]] == 1)
    blocks, off = [], 0
    for s in sizes:
        blocks.append(list(range(off, off + s)))
        off += s
    edges = []
    for a, b in h.edges:
        edges += [(u, v) for u in blocks[a] for v in blocks[b]]
    colors = [0] * len(edges)
    e_star = None
    if which == "g1":
        rng = random.Random(seed)
        a, b = f_star
        e_star = (rng.choice(blocks[a]), rng.choice(blocks[b]))
        colors[edges.index(e_star)] = 1
    g = Graph(off, edges, colors)
    hc = Graph(h.n, h.edges, [1 if e == f_star else 0 for e in h.edges])
    return JoinInstance(m, hc, y, f_star, blocks, which, g, e_star)


# --- random and planted graphs ----------------------------------------------


def _pair_from_index(n: int, idx: int) -> tuple[int, int]:
    # lexicographic rank of (u, v), u < v; row u starts at u*n - u*(u+1)/2
    u = n - 2 - (math.isqrt(4 * n * (n - 1) - 8 * idx - 7) - 1) // 2
    start = u * n - u * (u + 1) // 2
    return u, idx - start + u + 1


def gen_random(n: int, m: int, seed: Optional[int] = None) -> Graph:
    """Uniform simple graph with exactly ``m`` edges on ``n`` vertices."""
    total = n * (n - 1) // 2
    if m < 0 or m > total:
        raise ValueError(f"m={m} infeasible for n={n} (at most {total})")
    rng = random.Random(seed)
    picks = sorted(rng.sample(range(total), m))
    return Graph(n, [_pair_from_index(n, i) for i in picks])


def gen_random_bipartite(a: int, b: int, m: int, seed: Optional[int] = None) -> Graph:
    """Uniform ``m``-edge subgraph of ``K_{a,b}``; sides are ``0..a-1`` and ``a..a+b-1``."""
    if m > a * b:
        raise ValueError(f"m={m} exceeds a*b={a * b}")
    rng = random.Random(seed)
    picks = sorted(rng.sample(range(a * b), m))
    return Graph(a + b, [(i // b, a + i % b) for i in picks])


def gen_planted(
    base: Graph,
    h: Graph,
    copies: int,
    seed: Optional[int] = None,
    attach: int = 0,
) -> Graph:
    """``base`` plus ``copies`` vertex-disjoint copies of ``h`` on fresh vertices.

    ``attach`` random edges join planted vertices to base vertices; they may
    create further copies, so ground truth must come from the exact oracle.
    """
    if copies < 0:
        raise ValueError("copies must be nonnegative")
    if attach and (base.n == 0 or copies == 0):
        raise ValueError("attach edges need both base vertices and planted copies")
    rng = random.Random(seed)
    edges = list(base.edges)
    colors = base.edge_colors()
    off = base.n
    for _ in range(copies):
        edges += [(u + off, v + off) for u, v in h.edges]
        colors += h.edge_colors()
        off += h.n
    present = set(edges)
    added = 0
    while added < attach:
        u = rng.randrange(base.n, off)
        v = rng.randrange(base.n)
        if (v, u) not in present:
            present.add((v, u))
            edges.append((v, u))
            colors.append(0)
            added += 1
    return Graph(off, edges, colors if (base.colored or h.colored) else None)


def gen_planted_gnm(
    n: int, m: int, h: Graph, copies: int, seed: Optional[int] = None, attach: int = 0
) -> Graph:
    """Random ``G(n, m)`` background with vertex-disjoint planted copies of ``h``."""
    return gen_planted(gen_random(n, m, seed), h, copies, seed=None if seed is None else seed + 1, attach=attach)


def c5_fan(s: int) -> Graph:
    """``s`` five-cycles sharing the path b-c-d-e: vertices a_1..a_s each adjacent to b and e.

    Vertex ids: b, c, d, e = 0..3 and a_i = 4..s+3. Exactly ``s`` five-cycles, ``2s+3`` edges.
    """
    if s < 1:
        raise ValueError("fan needs s >= 1")
    edges = [(0, 1), (1, 2), (2, 3)]
    for i in range(s):
        edges += [(0, 4 + i), (3, 4 + i)]
    return Graph(s + 4, edges)


def fan_on_bipartite(s: int, m: int, side: int, seed: Optional[int] = None) -> Graph:
    """A ``c5_fan(s)`` next to a random bipartite background, ``m`` edges in total."""
    fan = c5_fan(s)
    if fan.m > m:
        raise ValueError("fan alone exceeds m")
    bg = gen_random_bipartite(side, side, m - fan.m, seed)
    return disjoint_union(fan, bg)

