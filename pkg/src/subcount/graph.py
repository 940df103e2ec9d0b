"""Graph storage, the degree-based vertex order, and the counted query oracle."""

from __future__ import annotations

import io
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, TextIO, Union


class GraphFormatError(ValueError):
    """Malformed graph file; ``lineno`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class QueryError(ValueError):
    pass


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph with optional edge colors.

    Neighbor lists are sorted by id so that ``neighbor_query`` answers are
    reproducible. Uncolored graphs report color 0 on every edge.
    """

    __slots__ = ("n", "m", "adjacency", "edges", "colored", "_adjsets", "_colors")

    def __init__(
        self,
        n: int,
        edges: Iterable[Sequence[int]],
        colors: Optional[Sequence[int]] = None,
    ):
        edge_list = [_key(int(u), int(v)) for u, v in edges]
        if colors is not None and len(colors) != len(edge_list):
            raise ValueError("one color per edge required")
        adjsets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edge_list:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if v in adjsets[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            adjsets[u].add(v)
            adjsets[v].add(u)
        self.n = n
        self.m = len(edge_list)
        self.edges: list[tuple[int, int]] = edge_list
        self.adjacency: list[list[int]] = [sorted(s) for s in adjsets]
        self._adjsets = adjsets
        self.colored = colors is not None
        if colors is not None:
            if any(int(c) < 0 for c in colors):
                raise ValueError("colors must be nonnegative integers")
            self._colors = {e: int(c) for e, c in zip(edge_list, colors)}
        else:
            self._colors = None

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def color(self, u: int, v: int) -> int:
        """Color of an existing edge (0 for uncolored graphs)."""
        if self._colors is None:
            return 0
        return self._colors[_key(u, v)]

    def edge_colors(self) -> list[int]:
        return [self.color(u, v) for u, v in self.edges]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def order_key(self, v: int) -> tuple[int, int]:
        return (len(self.adjacency[v]), v)

    def __repr__(self) -> str:
        tag = " colored" if self.colored else ""
        return f"Graph(n={self.n}, m={self.m}{tag})"


def parse_graph(source: Union[str, bytes, TextIO]) -> Graph:
    """Parse the text edge-list format.

    Header ``n m`` or ``n m colored``, then exactly ``m`` lines ``u v`` (``u v c``
    when colored). Lines starting with ``#`` and blank lines are skipped.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        source = io.StringIO(source)

    header = None
    edges: list[tuple[int, int]] = []
    colors: list[int] = []
    seen: set[tuple[int, int]] = set()
    colored = False
    n = m = 0
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "colored"):
                raise GraphFormatError("header must be 'n m' or 'n m colored'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError("non-integer header field", lineno) from None
            if n < 0 or m < 0:
                raise GraphFormatError("negative header field", lineno)
            colored = len(parts) == 3
            header = lineno
            continue
        want = 3 if colored else 2
        if len(parts) != want:
            if len(parts) == 3 and not colored:
                raise GraphFormatError("edge color given but header lacks 'colored'", lineno)
            raise GraphFormatError(f"expected {want} fields", lineno)
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            raise GraphFormatError("non-integer field", lineno) from None
        u, v = vals[0], vals[1]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex id out of range [0, {n})", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        k = _key(u, v)
        if k in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
        seen.add(k)
        edges.append((u, v))
        if colored:
            if vals[2] < 0:
                raise GraphFormatError("negative color", lineno)
            colors.append(vals[2])
        if len(edges) > m:
            raise GraphFormatError(f"more than m={m} edge lines", lineno)
    if header is None:
        raise GraphFormatError("missing header")
    if len(edges) != m:
        raise GraphFormatError(f"header promises m={m} edges, found {len(edges)}")
    return Graph(n, edges, colors if colored else None)


def load_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh)


def format_graph(g: Graph, force_colored: bool = False) -> str:
    colored = g.colored or force_colored
    lines = [f"{g.n} {g.m}" + (" colored" if colored else "")]
    for u, v in g.edges:
        lines.append(f"{u} {v} {g.color(u, v)}" if colored else f"{u} {v}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class VertexOrder:
    """Total order: by degree, ties broken by vertex id."""

    graph: Graph

    def precedes(self, u: int, v: int) -> bool:
        return self.graph.order_key(u) < self.graph.order_key(v)


def precedes(order: VertexOrder, u: int, v: int) -> bool:
    return order.precedes(u, v)


def min_degree_sum(g: Graph) -> int:
    return sum(min(g.degree(u), g.degree(v)) for u, v in g.edges)


@dataclass
class QueryCounts:
    degree: int = 0
    neighbor: int = 0
    pair: int = 0
    edge_sample: int = 0

    @property
    def total(self) -> int:
        return self.degree + self.neighbor + self.pair + self.edge_sample

    def __add__(self, other: "QueryCounts") -> "QueryCounts":
        return QueryCounts(
            self.degree + other.degree,
            self.neighbor + other.neighbor,
            self.pair + other.pair,
            self.edge_sample + other.edge_sample,
        )


@dataclass
class QuerySession:
    """The only path through which estimators touch ``graph``.

    Every oracle call bumps exactly one counter. ``rng`` needs only a
    ``randrange(n)`` method, so a scripted chooser can stand in for exhaustive
    enumeration of the sampler's randomness.
    """

    graph: Graph
    seed: Optional[int] = None
    rng: object = None
    counts: QueryCounts = field(default_factory=QueryCounts)

    def __post_init__(self):
        if self.rng is None:
            self.rng = random.Random(self.seed)

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def n(self) -> int:
        return self.graph.n

    def randrange(self, k: int) -> int:
        return self.rng.randrange(k)

    def _check(self, v: int) -> None:
        if not 0 <= v < self.graph.n:
            raise QueryError(f"vertex {v} out of range")

    def degree_query(self, v: int) -> int:
        self._check(v)
        self.counts.degree += 1
        return len(self.graph.adjacency[v])

    def neighbor_query(self, v: int, i: int) -> int:
        self._check(v)
        adj = self.graph.adjacency[v]
        if not 0 <= i < len(adj):
            raise QueryError(f"neighbor index {i} out of range for vertex {v} (degree {len(adj)})")
        self.counts.neighbor += 1
        return adj[i]

    def pair_color_query(self, u: int, v: int) -> Optional[int]:
        """Color of edge {u, v}, or None when absent."""
        self._check(u)
        self._check(v)
        if u == v:
            raise QueryError("pair query needs two distinct vertices")
        self.counts.pair += 1
        if not self.graph.has_edge(u, v):
            return None
        return self.graph.color(u, v)

    def pair_query(self, u: int, v: int) -> bool:
        return self.pair_color_query(u, v) is not None

    def edge_sample_query(self) -> tuple[int, int, int]:
        """Uniform edge as (u, v, color) with u < v."""
        g = self.graph
        if g.m == 0:
            raise QueryError("edge-sample query on an empty graph")
        self.counts.edge_sample += 1
        u, v = g.edges[self.rng.randrange(g.m)]
        return u, v, g.color(u, v)


def ceil_ratio_sqrt(d: int, m: int) -> int:
    """Smallest integer t >= 1 with t * sqrt(m) >= d, in exact arithmetic."""
    if d <= 0:
        return 1
    q = (d * d + m - 1) // m
    return math.isqrt(q - 1) + 1
