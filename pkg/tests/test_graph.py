import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subcount.graph import (
    Graph,
    GraphFormatError,
    QueryCounts,
    QueryError,
    QuerySession,
    VertexOrder,
    ceil_ratio_sqrt,
    format_graph,
    load_graph,
    min_degree_sum,
    parse_graph,
    precedes,
)
from subcount.instances import clique, gen_random, path, star


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


def test_parse_k3():
    g = parse_graph("3 3\n0 1\n1 2\n0 2")
    assert (g.n, g.m) == (3, 3)
    assert not g.colored


def test_parse_colored_edge():
    g = parse_graph("2 1 colored\n0 1 1")
    assert g.colored and g.color(0, 1) == 1


def test_parse_duplicate_edge():
    with pytest.raises(GraphFormatError, match="duplicate") as exc:
        parse_graph("2 2\n0 1\n0 1")
    assert exc.value.lineno == 3


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("2 1\n0 0", "self-loop"),
        ("2 1\n0 1 4", "colored"),
        ("2 1\n0 5", "out of range"),
        ("2 2\n0 1", "promises"),
        ("x y\n", "non-integer"),
        ("2 1 bogus\n0 1", "header"),
        ("3 1 colored\n0 1", "expected 3"),
        ("", "missing header"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        parse_graph(text)


def test_comments_and_roundtrip(tmp_path):
    src = "# pattern\n3 2 colored\n# edge list\n0 1 2\n\n1 2 0\n"
    g = parse_graph(src)
    p = tmp_path / "g.txt"
    p.write_text(format_graph(g))
    h = load_graph(p)
    assert h.edges == g.edges and h.edge_colors() == [2, 0]


def test_degree_queries():
    s = QuerySession(clique(3), seed=0)
    assert s.degree_query(0) == 2
    assert QuerySession(star(3)).degree_query(0) == 3
    assert QuerySession(Graph(2, [])).degree_query(1) == 0
    with pytest.raises(QueryError):
        s.degree_query(7)


def test_neighbor_queries():
    s = QuerySession(clique(3))
    assert s.neighbor_query(0, 0) == 1
    assert s.neighbor_query(0, 1) == 2
    with pytest.raises(QueryError):
        s.neighbor_query(0, 2)
    assert s.counts.neighbor == 2


def test_pair_queries():
    assert QuerySession(clique(3)).pair_query(0, 2)
    assert not QuerySession(path(3)).pair_query(0, 2)
    s = QuerySession(parse_graph("2 1 colored\n0 1 1"))
    assert s.pair_color_query(0, 1) == 1
    with pytest.raises(QueryError):
        s.pair_query(1, 1)


def test_edge_sample_single_edge_and_empty():
    s = QuerySession(path(2), seed=3)
    assert all(s.edge_sample_query() == (0, 1, 0) for _ in range(20))
    with pytest.raises(QueryError):
        QuerySession(Graph(3, []), seed=0).edge_sample_query()


def test_edge_sample_chi_square_k3():
    s = QuerySession(clique(3), seed=11)
    N = 300_000
    freq = Counter(s.edge_sample_query()[:2] for _ in range(N))
    chi2 = sum((c - N / 3) ** 2 / (N / 3) for c in freq.values())
    # two degrees of freedom: the survival function is exp(-x/2)
    assert chi2 < 2 * math.log(1e6)
    assert all(abs(c / N - 1 / 3) < 0.01 for c in freq.values())


@pytest.mark.parametrize("seed", [1, 2])
def test_edge_sample_uniform_within_five_sigma(seed):
    g = gen_random(15, 50, seed=seed)
    s = QuerySession(g, seed=seed)
    N = 100_000
    freq = Counter(s.edge_sample_query()[:2] for _ in range(N))
    p = 1 / g.m
    sd = math.sqrt(N * p * (1 - p))
    assert len(freq) == g.m
    assert all(abs(c - N * p) <= 5 * sd for c in freq.values())


def test_precedes_examples():
    g = Graph(6, [(0, 1), (1, 2), (1, 3), (4, 5)])
    o = VertexOrder(g)
    assert precedes(o, 0, 1)  # degree 1 before degree 3
    assert precedes(o, 2, 5)  # equal degree, smaller id first


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=30))
def test_precedes_is_strict_total_order(g):
    o = VertexOrder(g)
    for u in range(g.n):
        assert not o.precedes(u, u)
        for v in range(g.n):
            if u != v:
                assert o.precedes(u, v) != o.precedes(v, u)
    keyed = sorted(range(g.n), key=g.order_key)
    for i in range(len(keyed) - 1):
        assert o.precedes(keyed[i], keyed[i + 1])


def test_precedes_exhaustive_n100():
    g = gen_random(100, 400, seed=5)
    o = VertexOrder(g)
    rank = {v: i for i, v in enumerate(sorted(range(g.n), key=g.order_key))}
    for u in range(g.n):
        for v in range(g.n):
            if u != v:
                assert o.precedes(u, v) == (rank[u] < rank[v])


def test_min_degree_sum_examples():
    assert min_degree_sum(clique(3)) == 6
    assert min_degree_sum(star(3)) == 3
    g = gen_random(50, 200, seed=0)
    assert min_degree_sum(g) <= 5 * 200 * math.sqrt(200)


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_graph_invariants(g):
    assert sum(g.degrees()) == 2 * g.m
    assert len(set(g.edges)) == g.m
    for v in range(g.n):
        assert g.adjacency[v] == sorted(g.adjacency[v])
        assert v not in g.adjacency[v]
    assert min_degree_sum(g) <= 5 * g.m * math.sqrt(g.m) if g.m else True


@settings(max_examples=40, deadline=None)
@given(graphs(), st.integers(0, 2**32))
def test_same_seed_same_answers_and_exact_accounting(g, seed):
    if g.m == 0:
        return
    a, b = QuerySession(g, seed=seed), QuerySession(g, seed=seed)
    rng = random.Random(seed)
    calls = 0
    for _ in range(30):
        op = rng.randrange(4)
        v = rng.randrange(g.n)
        if op == 0:
            assert a.degree_query(v) == b.degree_query(v)
        elif op == 1:
            if g.degree(v) == 0:
                continue
            i = rng.randrange(g.degree(v))
            assert a.neighbor_query(v, i) == b.neighbor_query(v, i)
        elif op == 2:
            w = rng.randrange(g.n)
            if w == v:
                continue
            assert a.pair_color_query(v, w) == b.pair_color_query(v, w)
        else:
            assert a.edge_sample_query() == b.edge_sample_query()
        calls += 1
    assert a.counts == b.counts and a.counts.total == calls


@given(st.integers(0, 10**6), st.integers(1, 10**6))
def test_ceil_ratio_sqrt_exact(d, m):
    t = ceil_ratio_sqrt(d, m)
    assert t >= 1
    assert t * t * m >= d * d
    if t > 1:
        assert (t - 1) ** 2 * m < d * d


def test_ceil_ratio_sqrt_examples():
    assert ceil_ratio_sqrt(25, 100) == 3
    assert ceil_ratio_sqrt(1, 100) == 1
    assert ceil_ratio_sqrt(20, 100) == 2


def test_query_counts_add():
    assert (QueryCounts(1, 2, 3, 4) + QueryCounts(1, 1, 1, 1)).total == 14


def test_graph_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 2)])
