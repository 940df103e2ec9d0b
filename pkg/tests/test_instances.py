import itertools
from fractions import Fraction

import pytest

from subcount.instances import (
    c5_fan,
    clique,
    cycle,
    fan_on_bipartite,
    figure1_pattern,
    gen_disjointness,
    gen_join_lowerbound,
    gen_planted,
    gen_random,
    is_bipartite,
    max_independent_fractional,
    path,
    star,
)
from subcount.graph import Graph
from subcount.oracle import exact_count, target_count
from subcount.pattern import decompose


def test_disjointness_layers():
    inst = gen_disjointness(10, 3, None, seed=1)
    g = inst.graph
    assert g.n == 40
    for layer in (2, 3):
        for a in range(10):
            for b in range(10):
                assert g.has_edge(inst.vertex(layer, a), inst.vertex(layer + 1, b))
    assert is_bipartite(g)
    assert not is_bipartite(gen_disjointness(10, 3, (1, 4), seed=1).graph)


def test_disjointness_counts():
    assert target_count(gen_disjointness(10, 2, None, seed=0).graph, cycle(5)) == 0
    assert target_count(gen_disjointness(10, 2, (3, 7), seed=0).graph, cycle(5)) >= 280


@pytest.mark.parametrize("seeds", [(0, 1), (2, 9)])
def test_disjointness_degree_invariance(seeds):
    a = gen_disjointness(8, 2, None, seed=seeds[0]).graph
    b = gen_disjointness(8, 2, (0, 5), seed=seeds[1]).graph
    assert a.degrees() == b.degrees()


def test_disjointness_promise_and_errors():
    inst = gen_disjointness(6, 1, (2, 4), seed=3)
    hits = [p for p in inst.X if inst.X[p] and inst.Y[p]]
    assert hits == [(2, 4)]
    for bad in [(1, 1), (0, 9)]:
        with pytest.raises(ValueError):
            gen_disjointness(6, 1, bad)
    with pytest.raises(ValueError):
        gen_disjointness(3, 1)


def test_join_k3():
    g0 = gen_join_lowerbound(clique(3), 16, "g0", seed=0)
    assert [len(b) for b in g0.blocks] == [4, 4, 4] and g0.graph.m == 48
    assert target_count(g0.graph, g0.pattern, colored=True) == 0
    g1 = gen_join_lowerbound(clique(3), 16, "g1", seed=0)
    assert target_count(g1.graph, g1.pattern, colored=True) == 4
    assert g1.graph.color(*g1.e_star) == 1


def test_join_errors():
    with pytest.raises(ValueError):
        gen_join_lowerbound(clique(3), 15)
    with pytest.raises(ValueError):
        gen_join_lowerbound(Graph(2, []), 16)
    with pytest.raises(ValueError):
        gen_join_lowerbound(clique(3), 16, "g2")


@pytest.mark.parametrize("h", [clique(3), cycle(5), clique(4), path(3), star(2), figure1_pattern()])
def test_join_dual_matches_rho(h):
    y = max_independent_fractional(h)
    assert all(y[a] + y[b] <= 1 for a, b in h.edges)
    assert sum(y, Fraction(0)) == decompose(h).rho


@pytest.mark.parametrize("h", [clique(3), cycle(5), clique(4)])
@pytest.mark.parametrize("m", [16, 64])
def test_join_colorful_count_equals_m_power(h, m):
    inst = gen_join_lowerbound(h, m, "g1", seed=2)
    rho = decompose(h).rho
    expected = round(m ** float(rho - 1))
    assert target_count(inst.graph, inst.pattern, colored=True) == expected
    for a, b in h.edges:
        assert len(inst.blocks[a]) * len(inst.blocks[b]) <= m


def test_join_path_differs_from_m_power():
    # a path has a non-unique maximum dual; the blow-up then holds 2m - 1 colorful copies
    inst = gen_join_lowerbound(path(3), 16, "g1", seed=0)
    assert target_count(inst.graph, inst.pattern, colored=True) == 31


def test_gen_random():
    assert gen_random(10, 45, seed=0).edges == clique(10).edges
    g = gen_random(30, 100, seed=4)
    assert (g.n, g.m) == (30, 100)
    with pytest.raises(ValueError):
        gen_random(5, 11)


def test_planted():
    g = gen_planted(Graph(0, []), clique(3), 5, seed=0)
    assert exact_count(g, clique(3)).subgraph_count == 5
    g = gen_planted(gen_random(30, 60, seed=1), clique(3), 4, seed=2, attach=6)
    assert g.m == 60 + 12 + 6 and g.n == 42
    with pytest.raises(ValueError):
        gen_planted(Graph(0, []), clique(3), 2, attach=1)


def test_fan():
    assert target_count(c5_fan(7), cycle(5)) == 7
    g = fan_on_bipartite(10, 400, 30, seed=0)
    assert g.m == 400 and target_count(g, cycle(5)) == 10
