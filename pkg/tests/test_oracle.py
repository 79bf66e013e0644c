import itertools

import pytest
from hypothesis import given

from lptrans.errors import HypothesisError, PathOverflowError, SizeLimitError
from lptrans.generators import fixture_walther_zamfirescu
from lptrans.graph import Graph
from lptrans.oracle import (
    count_longest_paths,
    enumerate_longest_paths,
    exact_lpt,
    is_transversal,
    longest_anchored_path_length,
    longest_path_length,
    naive_longest_paths,
    on_some_longest_path,
)
from lptrans.recognizers import complete_graph, cycle_graph, path_graph

from .conftest import graphs

P4 = path_graph(4)
C5 = cycle_graph(5)


def _permutation_paths(g: Graph):
    """Longest paths by brute force over vertex orderings of every subset."""
    best, found = -1, set()
    for k in range(1, g.n + 1):
        for perm in itertools.permutations(range(g.n), k):
            if all(g.has_edge(a, b) for a, b in zip(perm, perm[1:])):
                if k - 1 > best:
                    best, found = k - 1, set()
                if k - 1 == best:
                    found.add(min(perm, perm[::-1]))
    return best, sorted(found)


def test_longest_path_length_examples():
    assert longest_path_length(P4) == 3
    assert longest_path_length(C5) == 4
    assert longest_path_length(Graph.from_edge_list(1, [])) == 0


def test_enumeration_examples():
    assert enumerate_longest_paths(P4).paths == ((0, 1, 2, 3),)
    assert len(enumerate_longest_paths(complete_graph(3))) == 3
    assert len(enumerate_longest_paths(C5)) == 5


@pytest.mark.parametrize("g", [complete_graph(3), C5, path_graph(5), cycle_graph(6), complete_graph(4)])
def test_enumeration_matches_permutation_search(g):
    length, paths = _permutation_paths(g)
    report = enumerate_longest_paths(g)
    assert report.length == length
    assert list(report.paths) == paths


def test_disconnected_graph_paths_come_from_the_biggest_component():
    g = Graph.from_edge_list(5, [(0, 1), (2, 3), (3, 4)])
    assert enumerate_longest_paths(g).paths == ((2, 3, 4),)
    assert on_some_longest_path(g) == {2, 3, 4}


def test_is_transversal_examples():
    assert is_transversal(P4, {1})
    assert is_transversal(C5, {3})
    assert not is_transversal(P4, set())
    assert is_transversal(P4, {0, 1, 2, 3})
    with pytest.raises(HypothesisError):
        is_transversal(P4, {7})
    with pytest.raises(ValueError):
        is_transversal(P4, {1}, method="guess")


def test_exact_lpt_examples():
    assert exact_lpt(path_graph(6))[0] == 1
    assert exact_lpt(complete_graph(4)) == (1, frozenset({0}))
    assert exact_lpt(Graph.from_edge_list(1, [])) == (1, frozenset({0}))
    k, witness = exact_lpt(C5)
    assert k == 1 and is_transversal(C5, witness)


def test_twelve_vertex_fixture():
    g = fixture_walther_zamfirescu()
    assert (g.n, g.m) == (12, 15)
    k, witness = exact_lpt(g)
    assert k == 2
    assert is_transversal(g, witness)
    assert not any(is_transversal(g, {v}) for v in range(g.n))
    assert not any(is_transversal(g, {v}, method="enumerate") for v in range(g.n))
    # frozen regression constants computed by the oracle and the naive search
    assert longest_path_length(g) == 9
    assert len(enumerate_longest_paths(g)) == 42
    assert enumerate_longest_paths(g) == naive_longest_paths(g)


def test_anchored_length_examples():
    assert longest_anchored_path_length(P4, range(4), {0}) == 3
    assert longest_anchored_path_length(P4, {1, 2, 3}, {2}) == 1
    assert longest_anchored_path_length(C5, range(5), range(5)) == 4
    assert longest_anchored_path_length(P4, {0, 1}, set()) is None
    with pytest.raises(HypothesisError):
        longest_anchored_path_length(P4, {0, 1}, {3})


def test_limits_and_overflow():
    with pytest.raises(SizeLimitError) as info:
        longest_path_length(path_graph(21))
    assert info.value.limit == 20
    with pytest.raises(SizeLimitError):
        enumerate_longest_paths(path_graph(17))
    with pytest.raises(PathOverflowError):
        enumerate_longest_paths(complete_graph(6), cap=100)
    with pytest.raises(HypothesisError):
        longest_path_length(Graph.from_edge_list(0, []))


def test_count_matches_closed_forms():
    assert count_longest_paths(complete_graph(6)) == 360  # 6!/2
    assert count_longest_paths(cycle_graph(7)) == 7
    assert count_longest_paths(Graph.from_edge_list(3, [])) == 3


@given(graphs(1, 8))
def test_dp_agrees_with_naive_search(g):
    dp = enumerate_longest_paths(g)
    assert dp == naive_longest_paths(g)
    assert count_longest_paths(g) == len(dp)
    assert on_some_longest_path(g) == frozenset(v for p in dp.paths for v in p)


@given(graphs(1, 7, connected=True))
def test_transversal_methods_agree(g):
    for v in range(g.n):
        assert is_transversal(g, {v}) == is_transversal(g, {v}, method="enumerate")


@given(graphs(1, 7, connected=True))
def test_exact_lpt_is_minimum(g):
    k, witness = exact_lpt(g)
    assert len(witness) == k and is_transversal(g, witness)
    assert not any(is_transversal(g, s) for s in itertools.combinations(range(g.n), k - 1))


@given(graphs(1, 7, connected=True))
def test_longest_paths_pairwise_intersect(g):
    masks = enumerate_longest_paths(g).masks
    assert all(a & b for a in masks for b in masks)
