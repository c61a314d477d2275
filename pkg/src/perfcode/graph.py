"""Core graph type and the basic operations everything else is built on.

Vertices are ``0..n-1``. Each neighbourhood is kept both as a ``frozenset`` and
as a Python ``int`` bitmask (bit ``u`` set iff ``u`` is a neighbour); the
bitmask form is what the pattern, decomposition and solver code use for fast
intersections.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from perfcode.errors import GraphError

WEIGHT_LIMIT = 2**31

VertexSet = tuple  # sorted tuple of vertex indices


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertex_set(vertices: Iterable[int], n: int | None = None) -> VertexSet:
    """Normalise to a strictly increasing tuple, validating against ``n``."""
    vs = tuple(sorted(set(vertices)))
    if n is not None and vs and (vs[0] < 0 or vs[-1] >= n):
        raise GraphError(f"vertex set {vs} has indices outside 0..{n - 1}")
    return vs


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("_n", "_bits", "_m", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        bits = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        self._init(n, bits)

    def _init(self, n, bits):
        self._n = n
        self._bits = tuple(bits)
        self._m = sum(b.bit_count() for b in bits) // 2
        self._adj = None

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "Graph":
        """Build from neighbourhood bitmasks, checking symmetry and loops."""
        n = len(bits)
        full = (1 << n) - 1
        for v, b in enumerate(bits):
            if b & ~full or b >> v & 1:
                raise GraphError(f"bad adjacency mask at vertex {v}")
            for u in iter_bits(b):
                if not bits[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at ({v}, {u})")
        g = cls.__new__(cls)
        g._init(n, bits)
        return g

    @classmethod
    def _trusted(cls, bits) -> "Graph":
        g = cls.__new__(cls)
        g._init(len(bits), bits)
        return g

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        a = np.asarray(matrix, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError("adjacency matrix must be square")
        if not np.array_equal(a, a.T) or a.diagonal().any():
            raise GraphError("adjacency matrix must be symmetric with zero diagonal")
        packed = np.packbits(a, axis=1, bitorder="little")
        return cls._trusted([int.from_bytes(row.tobytes(), "little") for row in packed])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> range:
        return range(self._n)

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def bits(self, v: int) -> int:
        """Open neighbourhood of ``v`` as a bitmask."""
        return self._bits[v]

    def closed_bits(self, v: int) -> int:
        return self._bits[v] | 1 << v

    @property
    def adjacency_bits(self) -> tuple[int, ...]:
        return self._bits

    def neighbors(self, v: int) -> frozenset[int]:
        if self._adj is None:
            self._adj = tuple(frozenset(iter_bits(b)) for b in self._bits)
        return self._adj[v]

    def degree(self, v: int) -> int:
        return self._bits[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._bits[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in iter_bits(self._bits[u] >> (u + 1) << (u + 1))]

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self._n):
            raise GraphError(f"vertex {v!r} out of range for n={self._n}")

    def adjacency_matrix(self) -> np.ndarray:
        n = self._n
        a = np.zeros((n, n), dtype=bool)
        for u, v in self.edges():
            a[u, v] = a[v, u] = True
        return a

    def is_clique(self, mask: int) -> bool:
        for v in iter_bits(mask):
            if (mask & ~(1 << v)) & ~self._bits[v]:
                return False
        return True

    def is_independent(self, mask: int) -> bool:
        return all(not (self._bits[v] & mask) for v in iter_bits(mask))

    def __eq__(self, other):
        return isinstance(other, Graph) and self._bits == other._bits

    def __hash__(self):
        return hash(self._bits)

    def __repr__(self):
        return f"Graph(n={self._n}, edges={self.edges()})"


@dataclass(frozen=True)
class WeightedGraph:
    graph: Graph
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != self.graph.n:
            raise GraphError(f"expected {self.graph.n} weights, got {len(w)}")
        for v, x in enumerate(w):
            if abs(x) > WEIGHT_LIMIT:
                raise GraphError(f"weight {x} of vertex {v} exceeds 2^31 in magnitude")

    @classmethod
    def unit(cls, graph: Graph) -> "WeightedGraph":
        return cls(graph, (1,) * graph.n)

    @property
    def n(self) -> int:
        return self.graph.n

    def weight_of(self, vertices: Iterable[int]) -> int:
        return sum(self.weights[v] for v in vertices)


def square(g: Graph) -> Graph:
    """Graph on the same vertices with ``uv`` an edge iff ``1 <= d(u, v) <= 2``.

    Per-vertex two-step neighbourhood expansion, O(nm). Large graphs go
    through the matrix kernel in :mod:`perfcode._kernels`.
    """
    from perfcode import _kernels

    if g.n >= _kernels.MATRIX_SQUARE_MIN_N:
        return Graph.from_matrix(_kernels.square_matrix(g.adjacency_matrix()))
    bits = g.adjacency_bits
    out = []
    for v in range(g.n):
        reach = bits[v]
        for u in iter_bits(bits[v]):
            reach |= bits[u]
        out.append(reach & ~(1 << v))
    return Graph._trusted(out)


def bfs_distances(g: Graph, source: int) -> list[float]:
    g.check_vertex(source)
    dist: list[float] = [math.inf] * g.n
    dist[source] = 0
    seen = 1 << source
    frontier = 1 << source
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.bits(v)
        nxt &= ~seen
        seen |= nxt
        for v in iter_bits(nxt):
            dist[v] = d
        frontier = nxt
    return dist


def distance(g: Graph, u: int, v: int) -> float:
    """Shortest-path length from ``u`` to ``v``; ``math.inf`` if disconnected."""
    g.check_vertex(v)
    return bfs_distances(g, u)[v]


def induced(g: Graph, vertices: Iterable[int]) -> tuple[Graph, VertexSet]:
    """Induced subgraph, relabelled ``0..k-1`` in increasing original order.

    Returns the subgraph and the label map (``labels[i]`` is the original
    vertex of new vertex ``i``).
    """
    labels = vertex_set(vertices)
    for v in labels:
        g.check_vertex(v)
    return _induced_sorted(g, labels), labels


def _induced_sorted(g: Graph, labels: Sequence[int]) -> Graph:
    index = {v: i for i, v in enumerate(labels)}
    sel = to_mask(labels)
    out = []
    for v in labels:
        b = 0
        for u in iter_bits(g.bits(v) & sel):
            b |= 1 << index[u]
        out.append(b)
    return Graph._trusted(out)


def component_masks(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g[within]`` as bitmasks, ordered by least vertex."""
    remaining = g.full_mask if within is None else within
    comps = []
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.bits(v)
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        remaining &= ~comp
    return comps


def connected_components(g: Graph) -> list[VertexSet]:
    return [tuple(iter_bits(c)) for c in component_masks(g)]


def shortest_path_within(g: Graph, source: int, target: int, allowed: int) -> list[int] | None:
    """BFS path from ``source`` to ``target`` using only vertices in ``allowed``
    (the endpoints are always allowed). Shortest paths are induced."""
    allowed |= 1 << source | 1 << target
    parent = {source: None}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if v == target:
            path = []
            while v is not None:
                path.append(v)
                v = parent[v]
            return path[::-1]
        for u in iter_bits(g.bits(v) & allowed):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    return None


# --------------------------------------------------------------------- chordality


def lexbfs(g: Graph, within: int | None = None) -> list[int]:
    """Lexicographic BFS visit order of ``g[within]`` (partition refinement)."""
    verts = list(iter_bits(g.full_mask if within is None else within))
    cells = [verts] if verts else []
    order = []
    while cells:
        first = cells[0]
        v = first.pop(0)
        if not first:
            cells.pop(0)
        order.append(v)
        nb = g.bits(v)
        refined = []
        for cell in cells:
            inside = [u for u in cell if nb >> u & 1]
            outside = [u for u in cell if not nb >> u & 1]
            if inside:
                refined.append(inside)
            if outside:
                refined.append(outside)
        cells = refined
    return order


def peo_violation(g: Graph, order: Sequence[int]) -> tuple[int, int, int] | None:
    """Check that ``order`` is a perfect elimination ordering.

    Returns ``None`` if every vertex's later neighbours form a clique, else a
    triple ``(v, u, w)`` with ``u, w`` non-adjacent later neighbours of ``v``.
    """
    pos = {v: i for i, v in enumerate(order)}
    later = to_mask(order)
    for v in order:
        later &= ~(1 << v)
        succ = g.bits(v) & later
        if not succ:
            continue
        parent = min(iter_bits(succ), key=pos.__getitem__)
        bad = succ & ~(1 << parent) & ~g.bits(parent)
        if bad:
            return v, parent, (bad & -bad).bit_length() - 1
    return None


def _cycle_through(g: Graph, v: int, u: int, w: int, within: int) -> list[int] | None:
    """Chordless cycle v-u-...-w-v with the path avoiding N[v] (inside ``within``)."""
    allowed = within & ~g.closed_bits(v)
    path = shortest_path_within(g, u, w, allowed)
    if path is None:
        return None
    return [v] + path


def find_chordless_cycle(g: Graph, within: int | None = None, hint=None) -> list[int] | None:
    """A chordless cycle of length >= 4 in ``g[within]``, or ``None``.

    A vertex ``v`` on such a cycle has two non-adjacent neighbours joined by
    a path outside ``N[v]``; we search for exactly that configuration.
    """
    within = g.full_mask if within is None else within
    if hint is not None:
        cyc = _cycle_through(g, *hint, within)
        if cyc is not None:
            return cyc
    for v in iter_bits(within):
        nv = g.bits(v) & within
        if nv.bit_count() < 2:
            continue
        for comp in component_masks(g, within & ~g.closed_bits(v)):
            touch = 0
            for x in iter_bits(comp):
                touch |= g.bits(x)
            attach = touch & nv
            for u in iter_bits(attach):
                far = attach & ~g.bits(u) & ~(1 << u)
                if far:
                    w = (far & -far).bit_length() - 1
                    path = shortest_path_within(g, u, w, comp)
                    return [v] + path
    return None


@dataclass(frozen=True)
class Chordality:
    """Outcome of :func:`chordality`: either a PEO or a chordless cycle."""

    peo: tuple[int, ...] | None
    cycle: tuple[int, ...] | None

    @property
    def is_chordal(self) -> bool:
        return self.peo is not None


def chordality(g: Graph, within: int | None = None) -> Chordality:
    """Certifying chordality test on ``g[within]``.

    The reverse LexBFS order is re-checked as a PEO; on failure a chordless
    cycle of length >= 4 is returned instead.
    """
    order = lexbfs(g, within)[::-1]
    bad = peo_violation(g, order)
    if bad is None:
        return Chordality(tuple(order), None)
    cycle = find_chordless_cycle(g, within, hint=bad)
    assert cycle is not None and len(cycle) >= 4
    return Chordality(None, tuple(cycle))


def is_chordal(g: Graph) -> bool:
    return chordality(g).is_chordal
