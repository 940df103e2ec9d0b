"""Backtracking count of injective edge-preserving maps (embeddings) H -> G."""

from __future__ import annotations

from .graph import Graph


class BudgetExceeded(RuntimeError):
    pass


def _search_order(h: Graph) -> list[int]:
    # highest degree first, then grow along edges so every later vertex has a mapped anchor
    remaining = set(range(h.n))
    order: list[int] = []
    while remaining:
        start = max(remaining, key=lambda a: (h.degree(a), -a))
        order.append(start)
        remaining.discard(start)
        while True:
            frontier = [a for a in remaining if any(b in order for b in h.adjacency[a])]
            if not frontier:
                break
            nxt = max(frontier, key=lambda a: (sum(b in order for b in h.adjacency[a]), h.degree(a), -a))
            order.append(nxt)
            remaining.discard(nxt)
    return order


def count_embeddings(h: Graph, g: Graph, colored: bool = False, budget: int | None = None) -> int:
    """Number of injective maps phi with every H-edge mapped onto a G-edge.

    With ``colored`` the G-edge color must equal the H-edge color. ``budget``
    caps the number of search nodes visited.
    """
    if h.n == 0:
        return 1
    if h.n > g.n:
        return 0
    order = _search_order(h)
    pos = {a: i for i, a in enumerate(order)}
    # for each step: earlier-placed H-neighbors (with the H-edge color)
    back: list[list[tuple[int, int]]] = []
    for i, a in enumerate(order):
        back.append([(pos[b], h.color(a, b)) for b in h.adjacency[a] if pos[b] < i])
    hdeg = [h.degree(a) for a in order]
    gdeg = g.degrees()
    adj = g.adjacency
    image = [-1] * h.n
    used = [False] * g.n
    nodes = 0
    last = h.n - 1

    def ok(i: int, v: int) -> bool:
        if used[v] or gdeg[v] < hdeg[i]:
            return False
        for j, col in back[i]:
            w = image[j]
            if not g.has_edge(v, w):
                return False
            if colored and g.color(v, w) != col:
                return False
        return True

    def rec(i: int) -> int:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(f"embedding search exceeded {budget} nodes")
        if back[i]:
            # scan the shortest neighbor list among already-placed anchors
            cands = min((adj[image[j]] for j, _ in back[i]), key=len)
        else:
            cands = range(g.n)
        if i == last:
            return sum(1 for v in cands if ok(i, v))
        total = 0
        for v in cands:
            if ok(i, v):
                image[i] = v
                used[v] = True
                total += rec(i + 1)
                used[v] = False
        image[i] = -1
        return total

    return rec(0)


def automorphism_count(h: Graph, colored: bool = False) -> int:
    return count_embeddings(h, h, colored=colored)
