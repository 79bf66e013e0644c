import pytest
from hypothesis import given
from hypothesis import strategies as st

from lptrans.errors import BudgetExhausted
from lptrans.generators import (
    HOST_NAMES,
    SplitMix64,
    fixture_text,
    fixture_walther_zamfirescu,
    gen_blowup,
    gen_chordal,
    gen_circular_arc,
    gen_class_filtered,
    gen_fat_structure,
    gen_hgraph,
    gen_interval,
    interval_representation,
    named_host,
)
from lptrans.graph import Graph, is_connected, parse_edge_list
from lptrans.hgraph import is_nice, realize
from lptrans.recognizers import (
    bull,
    chair,
    complete_graph,
    contains_induced,
    cycle_graph,
    is_chordal,
    path_graph,
)


def _model_graph(sets) -> Graph:
    n = len(sets)
    return Graph.from_edge_list(n, [(u, v) for u in range(n) for v in range(u + 1, n) if sets[u] & sets[v]])


def test_splitmix_reference_values():
    assert SplitMix64(0).next_u64() == 16294208416658607535
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(5)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
        4593380528125082431,
        16408922859458223821,
    ]


def test_splitmix_helpers():
    rng = SplitMix64(9)
    draws = [rng.below(7) for _ in range(500)]
    assert set(draws) == set(range(7))
    assert all(2 <= rng.between(2, 4) <= 4 for _ in range(100))
    assert all(0.0 <= rng.random() < 1.0 for _ in range(100))
    items = list(range(10))
    rng.shuffle(items)
    assert sorted(items) == list(range(10))
    assert SplitMix64(3).fork(1).next_u64() == SplitMix64(3).fork(1).next_u64()
    assert SplitMix64(3).fork(1).next_u64() != SplitMix64(3).fork(2).next_u64()
    with pytest.raises(ValueError):
        rng.below(0)


def test_chordal_examples():
    g, rep = gen_chordal(1, 8)
    assert g.n == 8 and is_connected(g) and is_chordal(g) is not None
    assert realize(rep) == g
    g, _ = gen_chordal(5, 1)
    assert g.n == 1 and g.m == 0
    star = Graph.from_edge_list(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    g, _ = gen_chordal(2, 6, density=1.0, host=star)
    assert g == complete_graph(6)
    with pytest.raises(ValueError):
        gen_chordal(0, 4, host=cycle_graph(4))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_interval_model_matches_realization(seed):
    inst = gen_interval(seed, 11)
    points = [set(range(l, r + 1)) for l, r in inst.model]
    assert inst.graph == _model_graph(points)
    assert is_connected(inst.graph) and is_nice(inst.rep)
    assert inst.rep.h == complete_graph(2)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_arc_model_matches_realization(seed):
    inst = gen_circular_arc(seed, 11)
    c = inst.circle
    points = [{(s + k) % c for k in range(ln)} for s, ln in inst.model]
    assert inst.graph == _model_graph(points)
    assert is_connected(inst.graph) and is_nice(inst.rep)
    assert inst.rep.h == complete_graph(3)


def test_interval_degenerate_models():
    assert realize(interval_representation([(3, 5)])).n == 1
    nested = [(0, 9), (1, 8), (2, 7), (3, 6)]
    assert realize(interval_representation(nested)) == complete_graph(4)
    assert gen_interval(4, 1).graph.n == 1
    with pytest.raises(ValueError):
        interval_representation([(2, 1)])


def test_class_filtered_examples():
    g = gen_class_filtered(0, 10, 0.4, [path_graph(5)])
    assert g.n == 10 and is_connected(g) and contains_induced(g, path_graph(5)) is None
    g = gen_class_filtered(1, 8, 0.6, [bull(), chair()])
    assert contains_induced(g, bull()) is None and contains_induced(g, chair()) is None
    assert gen_class_filtered(2, 6, 1.0) == complete_graph(6)
    with pytest.raises(BudgetExhausted) as info:
        gen_class_filtered(3, 12, 0.1, [path_graph(3)], budget=5)
    assert info.value.attempts == 5


def test_structured_families_stay_in_class():
    forbidden = [bull(), chair()]
    for seed in range(5):
        g = gen_fat_structure(seed, 7, forbidden=forbidden)
        assert all(contains_induced(g, f) is None for f in forbidden)
        g = gen_fat_structure(seed, 8, cyclic=True, max_class=1)
        assert g == cycle_graph(8)
        g = gen_blowup(seed, cycle_graph(5), forbidden=[path_graph(5)])
        assert contains_induced(g, path_graph(5)) is None and is_connected(g)
    with pytest.raises(ValueError):
        gen_fat_structure(0, 3, cyclic=True)


def test_hosts():
    assert named_host("K4") == complete_graph(4)
    assert named_host("paw").edges() == [(0, 1), (0, 2), (0, 3), (1, 2)]
    assert set(HOST_NAMES) == {"K2", "K3", "paw", "K4", "random"}
    with pytest.raises(ValueError):
        named_host("K9")


@given(st.integers(0, 2**40), st.sampled_from(HOST_NAMES), st.integers(1, 12))
def test_hgraph_instances_are_nice_and_connected(seed, host, n):
    inst = gen_hgraph(seed, n, host=host)
    assert inst.graph.n == n and is_connected(inst.graph)
    assert is_nice(inst.rep) and realize(inst.rep) == inst.graph


def test_generators_are_deterministic():
    assert gen_hgraph(11, 9, "K4") == gen_hgraph(11, 9, "K4")
    assert gen_interval(11, 9) == gen_interval(11, 9)
    assert gen_circular_arc(11, 9) == gen_circular_arc(11, 9)
    assert gen_class_filtered(11, 9, 0.5, [bull()]) == gen_class_filtered(11, 9, 0.5, [bull()])
    assert gen_hgraph(11, 9, "K4") != gen_hgraph(12, 9, "K4")


def test_fixture_facts():
    g = fixture_walther_zamfirescu()
    assert g == parse_edge_list(fixture_text())
    assert (g.n, g.m) == (12, 15)
    assert is_connected(g)
