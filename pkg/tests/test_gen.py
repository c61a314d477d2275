import pytest

import oracles
from perfcode.errors import CapExceeded
from perfcode.gen import (
    GENERATOR_ID,
    GenConfig,
    blow_up_with_ed,
    cone,
    exhaustive_graphs,
    make_rng,
    random_chordal,
    random_graph,
    random_in_class,
    substitute,
)
from perfcode.graph import Graph, is_chordal
from perfcode.patterns import HOLE_BANNER_FREE, P6_BULL_FREE, P6_S113_FREE, ClassSpec, PatternId, is_in_class
from perfcode.wed import brute_force_eds, is_efficient_dominating


def test_generator_is_named():
    assert GENERATOR_ID.startswith("philox")


def test_config_validation():
    with pytest.raises(ValueError):
        GenConfig(0)
    with pytest.raises(ValueError):
        GenConfig(3, max_attempts=0)
    with pytest.raises(ValueError):
        GenConfig(3, weight_range=(2, 1))
    with pytest.raises(ValueError):
        GenConfig(3, edge_probability=1.5)


def test_random_graph_edge_cases():
    assert random_graph(GenConfig(1)) == Graph(1)
    assert random_graph(GenConfig(7, 0.0)).m == 0
    assert random_graph(GenConfig(7, 1.0)) == Graph.complete(7)


def test_random_graph_is_deterministic():
    a = random_graph(GenConfig(15, 0.3, seed=9))
    assert a == random_graph(GenConfig(15, 0.3, seed=9))
    assert a != random_graph(GenConfig(15, 0.3, seed=10))
    assert a != random_graph(GenConfig(15, 0.3, seed=9, stream=1))


def test_seed_is_reduced_to_64_bits():
    assert random_graph(GenConfig(10, seed=2**64 + 5)) == random_graph(GenConfig(10, seed=5))


def test_random_in_class_single_vertex():
    for seed in range(5):
        g, w = random_in_class(GenConfig(1, cls=P6_BULL_FREE, seed=seed))
        assert g.n == 1 and len(w) == 1


def test_random_in_class_hole_banner_free():
    g, w = random_in_class(GenConfig(8, cls=HOLE_BANNER_FREE, seed=42))
    assert is_in_class(g, HOLE_BANNER_FREE)
    assert all(0 <= x <= 9 for x in w)


def test_random_in_class_requires_ed():
    for seed in range(30):
        got = random_in_class(GenConfig(6, 0.5, P6_S113_FREE, require_ed=True, seed=seed))
        if got is not None:
            assert brute_force_eds(got[0])
            assert is_in_class(got[0], P6_S113_FREE)


def test_random_in_class_errors():
    with pytest.raises(ValueError):
        random_in_class(GenConfig(5))
    with pytest.raises(CapExceeded):
        random_in_class(GenConfig(21, cls=P6_BULL_FREE, require_ed=True))


def test_random_in_class_gives_up():
    edgeless = ClassSpec((PatternId.P2,))
    assert random_in_class(GenConfig(8, 1.0, edgeless, max_attempts=3, max_repairs=5)) is None
    g, _ = random_in_class(GenConfig(8, 1.0, edgeless, max_attempts=1))
    assert g.m == 0


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 8), (4, 64), (5, 1024)])
def test_exhaustive_counts(n, count):
    graphs = list(exhaustive_graphs(n))
    assert len(graphs) == count
    assert len(set(graphs)) == count


def test_exhaustive_order_and_cap():
    first = list(exhaustive_graphs(3))
    assert first[0].m == 0 and first[1].edges() == [(0, 1)] and first[-1] == Graph.complete(3)
    with pytest.raises(CapExceeded):
        next(exhaustive_graphs(8))


@pytest.mark.parametrize("seed", range(30))
def test_random_chordal_is_chordal(seed):
    rng = make_rng(seed)
    g = random_chordal(int(rng.integers(1, 40)), rng)
    assert is_chordal(g) and oracles.is_chordal(g)


def test_substitute_and_cone():
    g = substitute(Graph.path(2), [Graph(2), Graph.complete(2)])
    assert g.edges() == [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    c = cone(Graph(2))
    assert c.edges() == [(0, 1), (0, 2)]


@pytest.mark.parametrize("seed", range(8))
def test_blow_up_keeps_class_and_ed(seed):
    base, _ = random_in_class(GenConfig(7, 0.4, P6_BULL_FREE, require_ed=True, seed=seed))
    ed = brute_force_eds(base)[0]
    g, planted = blow_up_with_ed(base, ed, 18, P6_BULL_FREE, make_rng(seed, 5))
    assert g.n == 18
    assert is_efficient_dominating(g, planted)
    assert is_in_class(g, P6_BULL_FREE)
    assert oracles.efficient_dominating_sets(g)
