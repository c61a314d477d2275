import pytest
from hypothesis import given, settings

import oracles
from strategies import graphs
from perfcode.decompose import (
    atoms,
    clique_separator,
    find_nontrivial_module,
    has_clique_separator_bruteforce,
    is_module,
    is_nearly_chordal,
    is_prime,
    lex_m,
    modules_avoiding,
    nearly_chordal_violation,
)
from perfcode.graph import Graph, component_masks, iter_bits, to_mask


def test_module_examples():
    assert find_nontrivial_module(Graph.cycle(4)) == (0, 2)
    assert find_nontrivial_module(Graph.path(4)) is None
    assert find_nontrivial_module(Graph.complete(3)) == (0, 1)
    with pytest.raises(ValueError):
        find_nontrivial_module(Graph(1))


@settings(max_examples=200, deadline=None)
@given(graphs(min_n=2, max_n=8))
def test_module_finder_matches_bruteforce(g):
    found = find_nontrivial_module(g)
    assert (found is None) == oracles.is_prime(g)
    if found is not None:
        assert 1 < len(found) < g.n
        assert oracles.is_module(g, set(found))
        assert is_module(g, found)
    assert is_prime(g) == oracles.is_prime(g)


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=2, max_n=9))
def test_modules_avoiding_are_modules_and_partition(g):
    parts = modules_avoiding(g, 0)
    union = 0
    for p in parts:
        assert not union & p
        union |= p
        assert oracles.is_module(g, set(iter_bits(p)))
    assert union == g.full_mask & ~1


def test_two_triangles_sharing_a_vertex():
    g = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    tree = atoms(g)
    assert sorted(tree.atoms) == [(0, 1, 2), (2, 3, 4)]
    assert tree.separators == [(2,)]


def test_c4_is_an_atom():
    tree = atoms(Graph.cycle(4))
    assert tree.atoms == [(0, 1, 2, 3)] and tree.separators == []


def test_atoms_reject_disconnected_input():
    with pytest.raises(ValueError):
        atoms(Graph(3, [(0, 1)]))


def test_lex_m_returns_an_ordering():
    g = Graph.cycle(6)
    order, higher = lex_m(g)
    assert sorted(order) == list(range(6))
    assert set(higher) == set(range(6))


def _connected(g):
    return g.n > 0 and len(component_masks(g)) == 1


@settings(max_examples=200, deadline=None)
@given(graphs(min_n=1, max_n=10))
def test_atom_tree_invariants(g):
    if not _connected(g):
        return
    tree = atoms(g)
    covered = set()
    for atom in tree.atoms:
        covered |= set(atom)
        assert not oracles.has_clique_separator(g, atom)
    assert covered == set(range(g.n))
    assert len(tree.separators) <= g.n - 1
    for node in tree.root.walk():
        if node.is_leaf:
            continue
        sep = to_mask(node.separator)
        assert g.is_clique(sep)
        assert len(component_masks(g, to_mask(node.vertices) & ~sep)) >= 2


@settings(max_examples=200, deadline=None)
@given(graphs(min_n=1, max_n=9))
def test_clique_separator_existence_matches_oracle(g):
    if not _connected(g):
        return
    found = clique_separator(g)
    assert (found is not None) == oracles.has_clique_separator(g, range(g.n))
    assert (found is not None) == has_clique_separator_bruteforce(g)
    if found is not None:
        comp, sep = found
        assert g.is_clique(sep) and comp and not comp & sep


def test_nearly_chordal_examples():
    assert is_nearly_chordal(Graph.cycle(6))
    assert is_nearly_chordal(Graph.cycle(5))
    g = Graph(7, [(0, 4), (0, 5), (0, 6), (1, 3), (1, 4), (1, 6), (2, 3), (2, 5), (3, 4)])
    v, cycle = nearly_chordal_violation(g)
    assert oracles.is_chordless_cycle(g, cycle, 4)
    assert not set(cycle) & ({v} | g.neighbors(v))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=9))
def test_nearly_chordal_matches_networkx(g):
    assert is_nearly_chordal(g) == oracles.is_nearly_chordal(g)
