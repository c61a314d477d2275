"""Deterministic graph generation.

Randomness comes from Philox4x64-10, a counter-based generator, keyed by
``(seed, stream)``: independent trials use the same seed with different
stream numbers, so results do not depend on evaluation order or on how many
workers run them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from perfcode.errors import CapExceeded
from perfcode.graph import Graph, iter_bits
from perfcode.patterns import ClassSpec, class_violation

GENERATOR_ID = "philox4x64-10/v1"
EXHAUSTIVE_MAX_N = 7
_U64 = (1 << 64) - 1


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed & _U64, stream & _U64]))


@dataclass(frozen=True)
class GenConfig:
    n: int
    edge_probability: float = 0.5
    cls: ClassSpec | None = None
    require_ed: bool = False
    seed: int = 0
    stream: int = 0
    max_attempts: int = 100
    max_repairs: int = 10_000
    weight_range: tuple[int, int] = (0, 9)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be at least 1")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise ValueError("edge_probability must lie in [0, 1]")
        lo, hi = self.weight_range
        if lo > hi:
            raise ValueError("weight_range is empty")


def _draw_bits(n: int, p: float, rng: np.random.Generator) -> list[int]:
    bits = [0] * n
    if n < 2:
        return bits
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    for u, v in zip(iu[keep].tolist(), ju[keep].tolist()):
        bits[u] |= 1 << v
        bits[v] |= 1 << u
    return bits


def random_graph(cfg: GenConfig) -> Graph:
    """Erdos-Renyi ``G(n, p)``; class and e.d. settings are ignored."""
    return Graph._trusted(_draw_bits(cfg.n, cfg.edge_probability, make_rng(cfg.seed, cfg.stream)))


def repair_into_class(g: Graph, cls: ClassSpec, rng: np.random.Generator, max_repairs: int) -> Graph | None:
    """Delete a random edge of each found witness until ``g`` is in ``cls``.

    Every catalogue pattern and every hole loses its induced copy when any of
    its edges goes, and the edge count drops each round, so this terminates
    (the edgeless graph is in every class). ``None`` if ``max_repairs`` runs out.
    """
    bits = list(g.adjacency_bits)
    for _ in range(max_repairs + 1):
        witness = class_violation(g, cls)
        if witness is None:
            return g
        edges = witness.edges()
        u, v = edges[int(rng.integers(len(edges)))]
        bits[u] &= ~(1 << v)
        bits[v] &= ~(1 << u)
        g = Graph._trusted(bits)
    return None


def random_weights(n: int, weight_range: tuple[int, int], rng: np.random.Generator) -> tuple[int, ...]:
    lo, hi = weight_range
    return tuple(int(x) for x in rng.integers(lo, hi + 1, size=n))


def random_in_class(cfg: GenConfig) -> tuple[Graph, tuple[int, ...]] | None:
    """Random member of ``cfg.cls`` (with an e.d. if ``require_ed``) plus weights.

    Rejection sampling with edge-deletion repair; ``None`` after
    ``max_attempts`` unsuccessful draws. The repair biases the distribution
    towards sparser graphs; this is not a uniform sampler of the class.
    """
    from perfcode.wed import BRUTE_FORCE_MAX_N, has_efficient_dominating_set

    if cfg.cls is None:
        raise ValueError("random_in_class needs cfg.cls")
    if cfg.require_ed and cfg.n > BRUTE_FORCE_MAX_N:
        raise CapExceeded(f"require_ed needs n <= {BRUTE_FORCE_MAX_N}")
    rng = make_rng(cfg.seed, cfg.stream)
    for _ in range(cfg.max_attempts):
        g = Graph._trusted(_draw_bits(cfg.n, cfg.edge_probability, rng))
        g = repair_into_class(g, cfg.cls, rng, cfg.max_repairs)
        if g is None:
            continue
        if cfg.require_ed and not has_efficient_dominating_set(g):
            continue
        return g, random_weights(cfg.n, cfg.weight_range, rng)
    return None


def exhaustive_graphs(n: int) -> Iterator[Graph]:
    """All ``2**(n(n-1)/2)`` labelled graphs on ``n <= 7`` vertices.

    Graph ``k`` has edge ``pairs[i]`` iff bit ``i`` of ``k`` is set, with
    ``pairs`` the vertex pairs in lexicographic order.
    """
    if n > EXHAUSTIVE_MAX_N:
        raise CapExceeded(f"exhaustive_graphs supports n <= {EXHAUSTIVE_MAX_N}")
    pairs = list(itertools.combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        bits = [0] * n
        for i in iter_bits(code):
            u, v = pairs[i]
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        yield Graph._trusted(bits)


def random_chordal(n: int, rng: np.random.Generator, attach: float = 0.6) -> Graph:
    """Random chordal graph built along a perfect elimination ordering.

    Vertex ``k`` is joined to a random clique of the graph on ``0..k-1``
    (grown greedily from a random earlier vertex), so ``n-1, ..., 0`` is a
    PEO. With probability ``1 - attach`` a vertex joins nothing.
    """
    bits = [0] * n
    for k in range(1, n):
        if rng.random() >= attach:
            continue
        u = int(rng.integers(k))
        clique = 1 << u
        cand = bits[u]
        for x in rng.permutation(k).tolist():
            if cand >> x & 1 and rng.random() < 0.5:
                clique |= 1 << x
                cand &= bits[x]
        for x in iter_bits(clique):
            bits[x] |= 1 << k
        bits[k] = clique
    return Graph._trusted(bits)


def substitute(base: Graph, parts: list[Graph]) -> Graph:
    """Replace vertex ``i`` of ``base`` by ``parts[i]``; parts of adjacent base
    vertices become completely joined. Vertices are numbered part by part."""
    offsets = list(itertools.accumulate([0] + [p.n for p in parts]))
    total = offsets[-1]
    block = [((1 << p.n) - 1) << offsets[i] for i, p in enumerate(parts)]
    bits = [0] * total
    for i, p in enumerate(parts):
        outside = 0
        for j in iter_bits(base.bits(i)):
            outside |= block[j]
        for v in range(p.n):
            bits[offsets[i] + v] = (p.bits(v) << offsets[i]) | outside
    return Graph._trusted(bits)


def cone(g: Graph) -> Graph:
    """``g`` plus a universal vertex, numbered 0."""
    bits = [((1 << g.n) - 1) << 1]
    bits += [(b << 1) | 1 for b in g.adjacency_bits]
    return Graph._trusted(bits)


def blow_up_with_ed(base: Graph, ed: tuple[int, ...], n_target: int, cls: ClassSpec,
                    rng: np.random.Generator) -> tuple[Graph, tuple[int, ...]]:
    """Large member of a substitution-closed class that keeps an e.d.

    Vertices outside the e.d. ``ed`` become random class members; vertices in
    it become cones over class members (the apex stays in the e.d.). Classes
    defined by prime forbidden graphs (such as (P6, bull)-free) are closed
    under substitution, and a cone never creates a prime pattern without a
    universal vertex. Part sizes are spread so the total is ``n_target``.
    Returns the graph and the e.d. formed by the apexes.
    """
    k = base.n
    if n_target < k:
        raise ValueError("n_target smaller than base graph")
    sizes = [1] * k
    for _ in range(n_target - k):
        sizes[int(rng.integers(k))] += 1
    in_ed = set(ed)
    parts = []
    for i, size in enumerate(sizes):
        inner = size - 1 if i in in_ed else size
        if inner == 0:
            part = Graph(0)
        else:
            sub = random_in_class(GenConfig(inner, float(rng.uniform(0.2, 0.9)), cls,
                                            seed=int(rng.integers(1 << 62)), max_attempts=1))
            part = sub[0] if sub is not None else Graph(inner)
        parts.append(cone(part) if i in in_ed else part)
    apexes = tuple(sum(p.n for p in parts[:i]) for i in sorted(in_ed))
    return substitute(base, parts), apexes
