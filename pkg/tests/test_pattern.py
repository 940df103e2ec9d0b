from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subcount.graph import Graph
from subcount.instances import clique, cycle, disjoint_union, figure1_pattern, path, star
from subcount.pattern import (
    InfeasiblePatternError,
    decompose,
    normalization_factor,
    solve_fractional_edge_cover,
    sub_pattern,
    sub_pattern_rho,
)

from .oracles import brute_force_cover, slot_profile_count_by_definition


@st.composite
def connected_patterns(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    # a random spanning tree keeps the pattern connected, then extra edges on top
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    extra = draw(st.lists(st.sampled_from(list(combinations(range(n), 2))), max_size=10))
    edges |= set(extra)
    return Graph(n, sorted(edges))


def check_structure(h, d):
    seen = []
    for cyc in d.cycles:
        assert len(cyc) % 2 == 1 and len(cyc) >= 3
        for i in range(len(cyc)):
            assert h.has_edge(cyc[i], cyc[(i + 1) % len(cyc)])
        seen.extend(cyc)
    for c, petals in d.stars:
        assert petals and all(h.has_edge(c, p) for p in petals)
        seen.extend([c, *petals])
    assert sorted(seen) == list(range(h.n))
    comp = set(d.component_edges())
    assert set(d.cross_edges) == set(h.edges) - comp
    for e, x in d.cover.items():
        assert x == (Fraction(1, 2) if any(_on_cycle(e, c) for c in d.cycles) else Fraction(1))
    assert set(d.cover) == comp
    assert sum(d.cover.values()) == d.rho


def _on_cycle(e, cyc):
    L = len(cyc)
    return any({cyc[i], cyc[(i + 1) % L]} == set(e) for i in range(L))


def test_cover_k3():
    sol = solve_fractional_edge_cover(clique(3))
    assert sol.objective == Fraction(3, 2)
    assert all(x == Fraction(1, 2) for x in sol.x.values())


def test_cover_single_edge_and_path():
    sol = solve_fractional_edge_cover(path(2))
    assert sol.x == {(0, 1): 1} and sol.objective == 1
    assert solve_fractional_edge_cover(path(3)).objective == 2 == brute_force_cover(3, path(3).edges)


def test_isolated_vertex_rejected():
    with pytest.raises(InfeasiblePatternError):
        decompose(Graph(3, [(0, 1)]))
    with pytest.raises(InfeasiblePatternError):
        solve_fractional_edge_cover(Graph(0, []))


def test_decompose_examples():
    d = decompose(clique(3))
    assert (d.o, d.s, d.rho) == (1, 0, Fraction(3, 2))
    d = decompose(cycle(5))
    assert (d.o, d.s, d.rho) == (1, 0, Fraction(5, 2))
    assert all(x == Fraction(1, 2) for x in d.cover.values()) and len(d.cover) == 5
    d = decompose(figure1_pattern())
    assert [len(c) for c in d.cycles] == [3]
    assert sorted(len(p) for _, p in d.stars) == [1, 2]
    assert d.rho == Fraction(9, 2)
    assert d.rho_cycle == [Fraction(3, 2)] and d.rho_star == [2, 1]


def test_describe_format():
    assert decompose(clique(3)).describe() == "rho=3/2 f=1 cycle=0,1,2"
    assert decompose(figure1_pattern()).describe() == "rho=9/2 f=1 cycle=0,1,2 star=3:4,5 star=6:7"


def test_canonical_ordering():
    h = disjoint_union(clique(3), cycle(5), star(1), star(3))
    d = decompose(h)
    assert [len(c) for c in d.cycles] == [5, 3]
    assert [len(p) for _, p in d.stars] == [3, 1]
    for cyc in d.cycles:
        assert cyc[0] == min(cyc) and cyc[1] < cyc[-1]


def test_normalization_examples():
    assert decompose(clique(3)).f == 1
    assert decompose(disjoint_union(clique(3), clique(3))).f == Fraction(1, 2)
    assert decompose(path(3)).f == 1


def test_sub_pattern_rho():
    d = decompose(figure1_pattern())
    assert sub_pattern_rho(d, [0], []) == Fraction(3, 2)
    assert sub_pattern_rho(d, [0], [0, 1]) == Fraction(9, 2)
    assert sub_pattern_rho(d, [], []) == 0
    with pytest.raises(IndexError):
        sub_pattern_rho(d, [1], [])
    sub = sub_pattern(figure1_pattern(), d, [0], [])
    assert (sub.n, sub.m) == (3, 3)


@settings(max_examples=150, deadline=None)
@given(connected_patterns())
def test_decomposition_matches_brute_force(h):
    d = decompose(h)
    check_structure(h, d)
    assert d.rho == brute_force_cover(h.n, h.edges)
    inv = 1 / d.f
    assert inv.denominator == 1 and inv >= 1


@settings(max_examples=60, deadline=None)
@given(connected_patterns(max_n=7))
def test_bipartite_patterns_get_integral_covers(h):
    if not nx.is_bipartite(nx.Graph(h.edges)):
        return
    d = decompose(h)
    assert d.o == 0
    assert all(x == 1 for x in d.cover.values())


@settings(max_examples=40, deadline=None)
@given(connected_patterns(max_n=6))
def test_f_matches_distinct_slot_images(h):
    d = decompose(h)
    assert 1 / d.f == slot_profile_count_by_definition(h, d)


def test_colored_normalization():
    # two triangles told apart by color: no slot swap
    h = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], [1, 1, 1, 0, 0, 0])
    d = decompose(h)
    assert d.f == Fraction(1, 2) and d.f_colored == 1
    assert normalization_factor(h, d, colored=True) == 1
