import random

from hypothesis import given, settings, strategies as st

from adhesive.generators import random_cset
from adhesive.homs import homs, iter_homs, power_probe, representable
from adhesive.kernel import GRAPH, Schema, Op, graph
from helpers import EDGE, TRIANGLE
from oracles import brute_homs

seeds = st.integers(0, 10**6)


def test_empty_pattern_has_one_morphism():
    assert len(homs(graph(0), TRIANGLE)) == 1


def test_single_vertex_into_discrete_graph():
    assert len(homs(graph(1), graph(3), injective=True)) == 3


def test_edge_into_triangle():
    assert len(homs(EDGE, TRIANGLE, injective=True)) == 3


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_homs_match_brute_force(seed):
    rng = random.Random(seed)
    x, y = random_cset(rng, max_size=2), random_cset(rng, max_size=3)
    got = [f.comps for f in iter_homs(x, y)]
    assert got == sorted(got)
    assert set(got) == set(brute_homs(x, y))
    assert len(got) == len(set(got))
    mono = {f.comps for f in iter_homs(x, y, injective=True)}
    assert mono == set(brute_homs(x, y, injective=True))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_representables_and_power_probes(seed):
    rng = random.Random(seed)
    x = random_cset(rng, max_size=3)
    for s in GRAPH.sorts:
        y, _ = representable(GRAPH, s)
        assert len(homs(y, x)) == x.size(s)          # Yoneda
        assert len(homs(x, power_probe(GRAPH, s))) == 2 ** x.size(s)


def test_representable_shapes():
    y_e, gen = representable(GRAPH, "E")
    assert y_e.sizes == (2, 1) and gen == 0
    y_v, _ = representable(GRAPH, "V")
    assert y_v.sizes == (1, 0)


def test_power_probe_on_a_chain_schema():
    s = Schema(("A", "B", "C"), (Op("f", "A", "B"), Op("g", "B", "C")))
    rng = random.Random(4)
    for _ in range(10):
        x = random_cset(rng, s, max_size=3)
        for sort in s.sorts:
            assert len(homs(x, power_probe(s, sort))) == 2 ** x.size(sort)
