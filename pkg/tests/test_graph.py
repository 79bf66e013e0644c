import pytest
from hypothesis import given

from lptrans.errors import GraphFormatError, HypothesisError
from lptrans.graph import (
    Graph,
    boundary,
    closed_neighborhood,
    components,
    dominates,
    format_edge_list,
    induced,
    is_clique,
    is_complete_between,
    is_connected,
    is_connected_dominating,
    is_induced_path,
    is_path,
    parse_edge_list,
    read_edge_list,
    write_edge_list,
)
from lptrans.recognizers import complete_graph, cycle_graph, path_graph

from .conftest import graphs

P4 = path_graph(4)
C5 = cycle_graph(5)
K4 = complete_graph(4)
STAR = Graph.from_edge_list(4, [(0, 1), (0, 2), (0, 3)])


def test_construction():
    assert P4.edges() == [(0, 1), (1, 2), (2, 3)]
    k1 = Graph.from_edge_list(1, [])
    assert k1.n == 1 and k1.m == 0
    dup = Graph.from_edge_list(3, [(0, 1), (0, 1), (1, 2)])
    assert dup.m == 2


@pytest.mark.parametrize("edges", [[(0, 3)], [(-1, 0)], [(1, 1)]])
def test_construction_rejects_bad_edges(edges):
    with pytest.raises(ValueError):
        Graph.from_edge_list(3, edges)


def test_components():
    assert components(P4, {0, 3}) == [frozenset({0}), frozenset({3})]
    assert components(C5) == [frozenset(range(5))]
    assert components(P4, {0, 1, 3}) == [frozenset({0, 1}), frozenset({3})]
    assert not is_connected(P4, {0, 3})


def test_boundary():
    assert boundary(P4, {0, 1}, {2, 3}) == {1}
    assert boundary(K4, {0}, {1, 2, 3}) == {0}
    assert boundary(P4, {0}, {2, 3}) == frozenset()
    with pytest.raises(HypothesisError):
        boundary(P4, {0, 1}, {1, 2})


def test_domination():
    assert dominates(STAR, {0}, range(4))
    assert not dominates(P4, {0}, range(4))
    assert dominates(P4, {1, 2}, range(4))
    assert is_connected_dominating(P4, {1, 2})
    assert not is_connected_dominating(P4, {0, 3})
    assert is_connected_dominating(C5, {0, 1, 2})
    with pytest.raises(HypothesisError):
        is_connected_dominating(P4, set())


def test_set_predicates():
    assert closed_neighborhood(P4, {1}) == {0, 1, 2}
    assert is_clique(K4, {0, 1, 2})
    assert not is_clique(P4, {0, 1, 2})
    k23 = Graph.from_edge_list(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])
    assert is_complete_between(k23, {0, 1}, {2, 3, 4})
    assert not is_complete_between(P4, {0}, {1, 2})


def test_paths():
    assert is_path(P4, (0, 1, 2, 3))
    assert not is_path(P4, (0, 2))
    assert not is_path(P4, ())
    assert is_induced_path(P4, (3, 2, 1))
    assert not is_induced_path(C5, (0, 1, 2, 3, 4))


def test_induced_keeps_origin():
    sub = induced(C5, {1, 2, 4})
    assert sub.origin == (1, 2, 4)
    assert sub.edges() == [(0, 1)]


def test_edge_list_round_trip(tmp_path):
    text = format_edge_list(C5, "a five-cycle")
    assert text.startswith("# a five-cycle\n5 5\n")
    assert parse_edge_list(text) == C5
    path = tmp_path / "c5.el"
    write_edge_list(C5, path)
    assert read_edge_list(path) == C5


def test_edge_list_comments_and_blank_lines():
    g = parse_edge_list("# header\n\n3 2  # n m\n0 1\n\n1 2 # last\n")
    assert g == path_graph(3)


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 1\n0 x\n", 2),
        ("3 1\n0 1 2\n", 2),
        ("3 1\n0 3\n", 2),
        ("3 1\n2 2\n", 2),
        ("-1 0\n", 1),
    ],
)
def test_edge_list_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_edge_list(text)
    assert info.value.lineno == line
    assert f"line {line}" in str(info.value)


def test_edge_list_count_mismatch():
    with pytest.raises(GraphFormatError, match="announces 2 edges"):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(GraphFormatError, match="header"):
        parse_edge_list("# nothing\n")


@given(graphs(0, 9))
def test_round_trip_property(g):
    assert parse_edge_list(format_edge_list(g)) == g
    assert hash(parse_edge_list(format_edge_list(g))) == hash(g)


@given(graphs(1, 9))
def test_components_partition(g):
    comps = components(g)
    assert sorted(v for c in comps for v in c) == list(range(g.n))
    for c in comps:
        assert is_connected(g, c)
