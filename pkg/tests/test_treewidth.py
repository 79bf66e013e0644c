import itertools

import pytest
from hypothesis import given

from lptrans.errors import GraphFormatError, HypothesisError
from lptrans.graph import Graph
from lptrans.recognizers import complete_graph, cycle_graph, path_graph
from lptrans.treewidth import (
    TreeDecomposition,
    decomposition_from_order,
    exact_decomposition,
    format_pace,
    parse_pace,
    treewidth,
)

from .conftest import graphs


def _brute_width(g: Graph) -> int:
    """Minimum over all elimination orderings of the largest elimination degree."""
    if g.n == 0:
        return -1
    best = g.n - 1
    for order in itertools.permutations(range(g.n)):
        adj = {v: set(g.neighbors(v)) for v in range(g.n)}
        worst = 0
        for v in order:
            nb = adj.pop(v)
            worst = max(worst, len(nb))
            if worst >= best:
                break
            for a in nb:
                adj[a] |= nb - {a}
                adj[a].discard(v)
        best = min(best, worst)
    return best


@pytest.mark.parametrize(
    "g, width",
    [
        (path_graph(2), 1),
        (path_graph(7), 1),
        (cycle_graph(6), 2),
        (complete_graph(4), 3),
        (complete_graph(6), 5),
        (Graph.from_edge_list(3, []), 0),
    ],
)
def test_known_widths(g, width):
    assert treewidth(g) == width
    td = exact_decomposition(g)
    td.validate(g)
    assert td.width == width and td.exact


def test_grid_width():
    edges = [(r * 3 + c, r * 3 + c + 1) for r in range(3) for c in range(2)]
    edges += [(r * 3 + c, (r + 1) * 3 + c) for r in range(2) for c in range(3)]
    assert treewidth(Graph.from_edge_list(9, edges)) == 3


@given(graphs(1, 7))
def test_width_matches_brute_force(g):
    td = exact_decomposition(g)
    td.validate(g)
    assert td.width == _brute_width(g)


def test_validate_rejects_broken_decompositions():
    g = path_graph(3)
    chain = Graph.from_edge_list(2, [(0, 1)])
    with pytest.raises(HypothesisError, match="edge in no bag"):
        TreeDecomposition(chain, (frozenset({0, 1}), frozenset({2}))).validate(g)
    with pytest.raises(HypothesisError, match="subtree"):
        TreeDecomposition(
            Graph.from_edge_list(3, [(0, 1), (1, 2)]),
            (frozenset({0, 1}), frozenset({1, 2}), frozenset({0})),
        ).validate(g)
    with pytest.raises(HypothesisError, match="no bag"):
        TreeDecomposition(chain, (frozenset({0, 1}), frozenset({1}))).validate(g)


def test_pace_round_trip():
    g = cycle_graph(6)
    td = exact_decomposition(g)
    text = format_pace(td, g.n)
    back = parse_pace(text)
    assert back.bags == td.bags and back.tree == td.tree
    back.validate(g)


def test_decomposition_from_any_order_is_valid():
    g = cycle_graph(7)
    td = decomposition_from_order(g, list(range(7)))
    td.validate(g)
    assert td.width >= 2


@pytest.mark.parametrize(
    "text, line",
    [
        ("s td 1 2 2\nb 1 1 x\n", 2),
        ("b 1 1\n", 1),
        ("s td 1 2 2\nb 2 1 2\n", 2),
        ("s td 1 2 2\nb 1 1 3\n", 2),
        ("s td 2 2 2\nb 1 1 2\nb 2 2\n1 1\n", 4),
        ("s tw 1 2 2\n", 1),
    ],
)
def test_pace_errors(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_pace(text)
    assert info.value.lineno == line


def test_pace_header_checks():
    with pytest.raises(GraphFormatError, match="missing"):
        parse_pace("c only a comment\n")
    with pytest.raises(GraphFormatError, match="announces 2 bags"):
        parse_pace("s td 2 2 2\nb 1 1 2\n")
    with pytest.raises(GraphFormatError, match="width"):
        parse_pace("s td 1 3 2\nb 1 1 2\n")
