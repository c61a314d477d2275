import itertools

from hypothesis import strategies as st

from perfcode.graph import Graph, WeightedGraph


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def weighted_graphs(draw, min_n=0, max_n=10, lo=0, hi=9):
    g = draw(graphs(min_n, max_n))
    w = draw(st.lists(st.integers(lo, hi), min_size=g.n, max_size=g.n))
    return WeightedGraph(g, tuple(w))
