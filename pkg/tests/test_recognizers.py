import itertools

import networkx as nx
import pytest
from hypothesis import given

from lptrans.errors import ClassMembershipError, HypothesisError
from lptrans.generators import gen_class_filtered, gen_interval
from lptrans.graph import Graph, induced, is_induced_path
from lptrans.recognizers import (
    PATTERNS,
    bull,
    chair,
    chordal_maximal_cliques,
    claw,
    complete_graph,
    contains_induced,
    cycle_graph,
    find_hole,
    find_matched_clique,
    find_monitor_path,
    induced_paths,
    is_chordal,
    is_monitor,
    matched_clique,
    matched_clique_index,
    maximal_induced_path,
    path_graph,
)

from .conftest import graphs


def _isomorphic_to(g: Graph, sub: tuple[int, ...], pattern: Graph) -> bool:
    return all(g.has_edge(sub[a], sub[b]) == pattern.has_edge(a, b) for a, b in itertools.combinations(range(pattern.n), 2))


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_pattern_shapes():
    assert (claw().m, chair().m, bull().m) == (3, 4, 5)
    assert matched_clique(3).n == 6 and matched_clique(3).m == 6
    assert set(PATTERNS) >= {"P5", "P6", "bull", "chair"}


def test_contains_induced_examples():
    hit = contains_induced(path_graph(4), matched_clique(2))
    assert hit is not None and _isomorphic_to(path_graph(4), hit, matched_clique(2))
    hit = contains_induced(cycle_graph(5), path_graph(4))
    assert hit is not None and _isomorphic_to(cycle_graph(5), hit, path_graph(4))
    assert contains_induced(complete_graph(4), claw()) is None
    assert contains_induced(cycle_graph(5), path_graph(5)) is None


@given(graphs(1, 8))
def test_contains_induced_matches_networkx(g):
    h = _nx(g)
    for name in ("P4", "bull", "chair"):
        pattern = PATTERNS[name]
        expected = any(
            nx.is_isomorphic(h.subgraph(s), _nx(pattern)) for s in itertools.combinations(range(g.n), pattern.n)
        )
        hit = contains_induced(g, pattern)
        assert (hit is not None) == expected
        if hit is not None:
            assert _isomorphic_to(g, hit, pattern)


def test_chordality_examples():
    peo = is_chordal(complete_graph(4))
    assert sorted(peo) == [0, 1, 2, 3]
    assert is_chordal(cycle_graph(4)) is None
    hole = find_hole(cycle_graph(6))
    assert hole is not None and len(hole) >= 4
    for seed in range(3):
        g, _ = gen_interval(seed, 12)
        assert is_chordal(g) is not None


@given(graphs(1, 9))
def test_chordality_matches_networkx(g):
    assert (is_chordal(g) is not None) == nx.is_chordal(_nx(g))
    if is_chordal(g) is not None:
        mine = sorted(sorted(k) for k in chordal_maximal_cliques(g))
        theirs = sorted(sorted(k) for k in nx.find_cliques(_nx(g)))
        assert mine == theirs
    else:
        hole = find_hole(g)
        assert len(hole) >= 4 and induced(g, hole).m == len(hole)


def test_matched_clique_index_examples():
    assert matched_clique_index(complete_graph(1)) == 1
    assert matched_clique_index(path_graph(4)) == 3
    assert matched_clique_index(matched_clique(4)) == 5
    for seed in range(5):
        g, _ = gen_interval(seed, 12)
        assert matched_clique_index(g) <= 3


@given(graphs(1, 8))
def test_matched_clique_witness_is_induced(g):
    for t in range(1, 4):
        hit = find_matched_clique(g, t)
        expected = any(
            _isomorphic_to(g, perm, matched_clique(t)) for perm in itertools.permutations(range(g.n), 2 * t)
        ) if g.n <= 6 or t == 1 else None
        if hit is not None:
            assert _isomorphic_to(g, hit, matched_clique(t))
        if expected is not None:
            assert (hit is not None) == expected


def test_maximal_induced_path_examples():
    assert maximal_induced_path(path_graph(6), range(6)) == tuple(range(6))
    assert sorted(maximal_induced_path(path_graph(7), (1, 2, 3, 4, 5))) == list(range(7))
    grown = maximal_induced_path(cycle_graph(6), (0, 1))
    assert len(grown) == 5 and is_induced_path(cycle_graph(6), grown)
    with pytest.raises(HypothesisError):
        maximal_induced_path(cycle_graph(6), (0, 2))


def test_is_monitor_examples():
    star = Graph.from_edge_list(4, [(0, 1), (0, 2), (0, 3)])
    assert is_monitor(star, {0})
    assert not is_monitor(path_graph(4), {1})
    assert is_monitor(cycle_graph(5), range(5))


def test_find_monitor_path_examples():
    x = find_monitor_path(complete_graph(4), 5)
    assert len(x) <= 2
    x = find_monitor_path(cycle_graph(5), 5)
    assert len(x) <= 2
    for seed in range(4):
        g = gen_class_filtered(seed, 9, 0.4, [path_graph(6)])
        x = find_monitor_path(g, 6)
        assert len(x) <= 3 and is_induced_path(g, x)
        closed = set(x).union(*(g.neighbors(v) for v in x))
        assert is_monitor(g, closed)


def test_find_monitor_path_rejects_long_paths():
    with pytest.raises(ClassMembershipError) as info:
        find_monitor_path(path_graph(5), 5)
    assert sorted(info.value.witness) == list(range(5))
    with pytest.raises(ValueError):
        find_monitor_path(path_graph(3), 7)


@given(graphs(1, 7))
def test_induced_paths_are_induced(g):
    for size in (1, 2, 3):
        for p in induced_paths(g, size):
            assert is_induced_path(g, p)
