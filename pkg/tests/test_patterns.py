import numpy as np
import pytest
from hypothesis import given, settings

import oracles
from strategies import graphs
from perfcode.errors import UnsupportedError
from perfcode.gen import cone, make_rng, substitute
from perfcode.graph import Graph
from perfcode.patterns import (
    CATALOG,
    HOLE_BANNER_FREE,
    MODULAR_SPLIT_MIN_N,
    P6_BULL_FREE,
    ClassSpec,
    Hole,
    PatternId,
    _find_within,
    _hole_via_p4,
    class_violation,
    find_hole,
    find_induced,
    is_hole,
    is_in_class,
    module_pieces,
    parse_class,
)


def test_catalogue_shapes():
    assert CATALOG[PatternId.S113].n == 6 and CATALOG[PatternId.S122].n == 6
    assert sorted(CATALOG[PatternId.BULL].degree(v) for v in range(5)) == [1, 1, 2, 3, 3]
    assert sorted(CATALOG[PatternId.BANNER].degree(v) for v in range(5)) == [1, 2, 2, 2, 3]
    assert CATALOG[PatternId.K23].m == 6
    assert CATALOG[PatternId.TWO_K2].m == 2 and CATALOG[PatternId.TWO_P3].m == 4


def test_pattern_parse_aliases():
    assert PatternId.parse("bull") is PatternId.BULL
    assert PatternId.parse("S111") is PatternId.CLAW
    assert PatternId.parse("triangle") is PatternId.C3
    with pytest.raises(ValueError):
        PatternId.parse("P99")


def test_bull_finds_itself():
    emb = find_induced(CATALOG[PatternId.BULL], PatternId.BULL)
    assert emb is not None and emb.vertices == (0, 1, 2, 3, 4)
    assert emb.is_valid_in(CATALOG[PatternId.BULL])


def test_c6_has_p5_but_no_p6():
    c6 = Graph.cycle(6)
    assert find_induced(c6, PatternId.P6) is None
    emb = find_induced(c6, PatternId.P5)
    assert emb is not None and emb.is_valid_in(c6)


def test_hole_examples():
    assert sorted(find_hole(Graph.cycle(5))) == [0, 1, 2, 3, 4]
    assert find_hole(Graph.cycle(4)) is None
    chorded = Graph(6, Graph.cycle(6).edges() + [(0, 2)])
    cycle = find_hole(chorded)
    assert sorted(cycle) == [0, 2, 3, 4, 5] and is_hole(chorded, cycle)
    assert find_hole(Graph.cycle(7), 6) is not None
    assert find_hole(Graph.cycle(5), 6) is None
    with pytest.raises(ValueError):
        find_hole(Graph.cycle(4), 4)


def test_long_hole_search_is_capped():
    with pytest.raises(UnsupportedError):
        find_hole(Graph.cycle(17), 6)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9))
def test_find_induced_matches_subset_oracle(g):
    adj = oracles.adjacency(g)[None]
    for pid in PatternId:
        emb = find_induced(g, pid)
        assert (emb is not None) == bool(oracles.has_induced_batch(adj, pid.graph)[0]), pid
        if emb is not None:
            assert emb.is_valid_in(g)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9))
def test_find_hole_matches_oracle(g):
    for k in (5, 6):
        cycle = find_hole(g, k)
        assert (cycle is not None) == oracles.has_hole(g, k)
        if cycle is not None:
            assert oracles.is_chordless_cycle(g, cycle, k)


def _planted(seed):
    # a random base graph whose vertices are blown up into random parts
    rng = make_rng(seed)
    base_n = int(rng.integers(8, 11))
    a = np.triu(rng.random((base_n, base_n)) < 0.5, 1)
    base = Graph.from_matrix(a | a.T)
    parts = []
    for _ in range(base_n):
        k = int(rng.integers(4, 10))
        b = np.triu(rng.random((k, k)) < 0.4, 1)
        part = Graph.from_matrix(b | b.T)
        parts.append(cone(part) if rng.random() < 0.3 else part)
    return substitute(base, parts)


@pytest.mark.parametrize("seed", range(25))
def test_module_split_search_agrees_with_direct_search(seed):
    g = _planted(seed)
    assert g.n >= MODULAR_SPLIT_MIN_N
    pieces = module_pieces(g)
    covered = 0
    for piece in pieces:
        covered |= piece
    assert covered == g.full_mask
    for pid in (PatternId.P4, PatternId.P5, PatternId.P6, PatternId.BULL, PatternId.C5, PatternId.S113):
        direct = _find_within(g, pid, g.full_mask)
        split = find_induced(g, pid)
        assert (direct is None) == (split is None), pid
        if split is not None:
            assert split.is_valid_in(g)
    assert (find_hole(g) is None) == (_hole_via_p4(g, g.full_mask) is None)


def test_module_split_finds_hole_inside_a_module():
    # a hole hidden in a module of a large graph
    inner = Graph.cycle(7)
    base = Graph.path(6)
    parts = [Graph(6)] * 5 + [inner]
    g = substitute(base, parts)
    assert g.n >= MODULAR_SPLIT_MIN_N
    cycle = find_hole(g)
    assert cycle is not None and is_hole(g, cycle)
    assert set(cycle) <= set(range(30, 37))


def test_class_witnesses():
    assert class_violation(Graph.cycle(5), P6_BULL_FREE) is None
    w = class_violation(Graph.path(6), P6_BULL_FREE)
    assert w.pattern is PatternId.P6
    hole = class_violation(Graph.cycle(6), HOLE_BANNER_FREE)
    assert isinstance(hole, Hole) and hole.is_valid_in(Graph.cycle(6))
    banner = CATALOG[PatternId.BANNER]
    assert class_violation(banner, HOLE_BANNER_FREE).pattern is PatternId.BANNER
    assert is_in_class(Graph.cycle(4), HOLE_BANNER_FREE)


def test_parse_class():
    assert parse_class("p6-bull-free") is P6_BULL_FREE
    spec = parse_class("P5,hole,claw")
    assert spec.hole_free and spec.forbidden == (PatternId.P5, PatternId.CLAW)
    assert str(spec) == "(hole,P5,claw)-free"
    with pytest.raises(ValueError):
        ClassSpec(())
