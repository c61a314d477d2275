"""Induced-subgraph detection for a fixed catalogue of small patterns, hole
detection, and membership in classes defined by forbidden induced subgraphs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from perfcode.decompose import find_nontrivial_module_mask, is_prime
from perfcode.errors import UnsupportedError
from perfcode.graph import Graph, component_masks, iter_bits, shortest_path_within

EXACT_HOLE_MAX_N = 16
# above this size, searches for prime patterns first split the host along modules
MODULAR_SPLIT_MIN_N = 32


class PatternId(enum.Enum):
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"
    P6 = "P6"
    P7 = "P7"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    CLAW = "claw"
    CHAIR = "chair"
    S113 = "S113"
    S122 = "S122"
    BULL = "bull"
    BANNER = "banner"
    K23 = "K23"
    TWO_P3 = "2P3"
    TWO_K2 = "2K2"

    @property
    def graph(self) -> Graph:
        return CATALOG[self]

    @classmethod
    def parse(cls, name: str) -> "PatternId":
        key = name.strip().lower()
        aliases = {"s111": cls.CLAW, "s112": cls.CHAIR, "fork": cls.CHAIR, "k3": cls.C3,
                   "triangle": cls.C3, "twop3": cls.TWO_P3, "twok2": cls.TWO_K2, "k2,3": cls.K23}
        if key in aliases:
            return aliases[key]
        for p in cls:
            if p.value.lower() == key or p.name.lower() == key:
                return p
        raise ValueError(f"unknown pattern {name!r}")


def _path_edges(k):
    return [(i, i + 1) for i in range(k - 1)]


CATALOG: dict[PatternId, Graph] = {
    PatternId.P2: Graph(2, _path_edges(2)),
    PatternId.P3: Graph(3, _path_edges(3)),
    PatternId.P4: Graph(4, _path_edges(4)),
    PatternId.P5: Graph(5, _path_edges(5)),
    PatternId.P6: Graph(6, _path_edges(6)),
    PatternId.P7: Graph(7, _path_edges(7)),
    PatternId.C3: Graph.cycle(3),
    PatternId.C4: Graph.cycle(4),
    PatternId.C5: Graph.cycle(5),
    # S_{i,j,k}: centre 0, legs of lengths i, j, k
    PatternId.CLAW: Graph(4, [(0, 1), (0, 2), (0, 3)]),
    PatternId.CHAIR: Graph(5, [(0, 1), (0, 2), (0, 3), (3, 4)]),
    PatternId.S113: Graph(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)]),
    PatternId.S122: Graph(6, [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)]),
    # triangle 0-1-2 with pendants on 1 and 2
    PatternId.BULL: Graph(5, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]),
    # C4 0-1-2-3 with a pendant on 0
    PatternId.BANNER: Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]),
    PatternId.K23: Graph(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)]),
    PatternId.TWO_P3: Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)]),
    PatternId.TWO_K2: Graph(4, [(0, 1), (2, 3)]),
}


@dataclass(frozen=True)
class Embedding:
    """Induced copy of ``pattern``: ``mapping[i]`` is the host image of pattern vertex ``i``."""

    pattern: PatternId
    mapping: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.mapping))

    def edges(self) -> list[tuple[int, int]]:
        return [(self.mapping[u], self.mapping[v]) for u, v in self.pattern.graph.edges()]

    def is_valid_in(self, g: Graph) -> bool:
        p = self.pattern.graph
        if len(self.mapping) != p.n or len(set(self.mapping)) != p.n:
            return False
        if any(not 0 <= h < g.n for h in self.mapping):
            return False
        for i in range(p.n):
            for j in range(i + 1, p.n):
                if p.has_edge(i, j) != g.has_edge(self.mapping[i], self.mapping[j]):
                    return False
        return True


def _search_order(p: Graph) -> list[int]:
    placed: list[int] = []
    pmask = 0
    while len(placed) < p.n:
        best = max(
            (v for v in range(p.n) if not pmask >> v & 1),
            key=lambda v: ((p.bits(v) & pmask).bit_count(), p.degree(v), -v),
        )
        placed.append(best)
        pmask |= 1 << best
    return placed


_ORDERS = {pid: _search_order(g) for pid, g in CATALOG.items()}


_PRIME = {pid: is_prime(g) for pid, g in CATALOG.items()}


def module_pieces(g: Graph) -> list[int]:
    """Vertex masks whose induced subgraphs together contain every induced
    copy of every prime graph occurring in ``g``.

    If ``M`` is a nontrivial module, a prime induced subgraph ``H`` meets
    ``M`` in at most one vertex or lies inside it (``H & M`` is a module of
    ``H``), so it survives in ``g[M]`` or in ``g`` with ``M`` shrunk to one
    representative. Small graphs are returned whole.
    """
    if g.n < MODULAR_SPLIT_MIN_N:
        return [g.full_mask]
    pieces = []
    stack = [g.full_mask]
    while stack:
        mask = stack.pop()
        module = find_nontrivial_module_mask(g, mask)
        if module is None:
            pieces.append(mask)
        else:
            stack.append(mask & ~module | (module & -module))
            stack.append(module)
    return pieces


def find_induced(g: Graph, pattern: PatternId) -> Embedding | None:
    """An induced copy of ``pattern`` in ``g``, or ``None``.

    Backtracking anchored on the pattern's highest-degree vertex; candidates
    must have enough degree, be adjacent to images of placed neighbours and
    non-adjacent to images of placed non-neighbours. For prime patterns in
    large hosts the search runs separately on each of :func:`module_pieces`.
    """
    p = pattern.graph
    if p.n > g.n or p.m > g.m:
        return None
    pieces = module_pieces(g) if _PRIME[pattern] else [g.full_mask]
    for piece in pieces:
        if piece.bit_count() >= p.n:
            emb = _find_within(g, pattern, piece)
            if emb is not None:
                return emb
    return None


def _find_within(g: Graph, pattern: PatternId, full: int) -> Embedding | None:
    p = pattern.graph
    order = _ORDERS[pattern]
    bits = g.adjacency_bits
    by_degree = [0] * (max(p.degree(v) for v in range(p.n)) + 1)
    for v in range(g.n):
        d = min(bits[v].bit_count(), len(by_degree) - 1)
        for k in range(d + 1):
            by_degree[k] |= 1 << v
    image = [-1] * p.n

    def place(i, used):
        if i == len(order):
            return True
        pv = order[i]
        cand = by_degree[p.degree(pv)] & ~used & full
        for j in range(i):
            pu = order[j]
            if p.has_edge(pv, pu):
                cand &= bits[image[pu]]
            else:
                cand &= ~bits[image[pu]]
            if not cand:
                return False
        for h in iter_bits(cand):
            image[pv] = h
            if place(i + 1, used | 1 << h):
                return True
        image[pv] = -1
        return False

    if place(0, 0):
        emb = Embedding(pattern, tuple(image))
        assert emb.is_valid_in(g)
        return emb
    return None


def _is_chordless_cycle(g: Graph, cycle) -> bool:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    mask = 0
    for v in cycle:
        mask |= 1 << v
    for i, v in enumerate(cycle):
        expected = 1 << cycle[i - 1] | 1 << cycle[(i + 1) % k]
        if g.bits(v) & mask != expected:
            return False
    return True


def is_hole(g: Graph, cycle, min_len: int = 5) -> bool:
    """``cycle`` (in cyclic order) is a chordless cycle of length >= ``min_len``."""
    return len(cycle) >= min_len and _is_chordless_cycle(g, cycle)


def _hole_via_p4(g: Graph, within: int) -> tuple[int, ...] | None:
    bits = g.adjacency_bits
    for b in iter_bits(within):
        for c in iter_bits(bits[b] & within >> (b + 1) << (b + 1)):
            closed_b = (bits[b] | 1 << b) & within
            closed_c = (bits[c] | 1 << c) & within
            a_side = bits[b] & within & ~closed_c
            d_side = bits[c] & within & ~closed_b
            if not a_side or not d_side:
                continue
            allowed = within & ~(closed_b | closed_c)
            for comp in component_masks(g, allowed):
                touch = 0
                for x in iter_bits(comp):
                    touch |= bits[x]
                for a in iter_bits(a_side & touch):
                    ds = d_side & touch & ~bits[a]
                    if ds:
                        d = (ds & -ds).bit_length() - 1
                        path = shortest_path_within(g, a, d, comp)
                        return (b, c) + tuple(reversed(path))
    return None


def _hole_exhaustive(g: Graph, min_len: int) -> tuple[int, ...] | None:
    bits = g.adjacency_bits
    for s in range(g.n):
        higher = g.full_mask >> (s + 1) << (s + 1)

        def extend(path, pmask):
            last = path[-1]
            inner = pmask & ~(1 << last) & ~(1 << s)
            for x in iter_bits(bits[last] & higher & ~pmask):
                if bits[x] & inner:
                    continue
                if len(path) >= 2 and bits[x] >> s & 1:
                    if len(path) + 1 >= min_len:
                        return tuple(path) + (x,)
                    continue
                found = extend(path + [x], pmask | 1 << x)
                if found:
                    return found
            return None

        found = extend([s], 1 << s)
        if found:
            return found
    return None


def find_hole(g: Graph, min_len: int = 5) -> tuple[int, ...] | None:
    """A chordless cycle of length >= ``min_len`` (>= 5), in cycle order, or ``None``.

    For ``min_len == 5`` every induced P4 ``a-b-c-d`` is tried: a path from
    ``a`` to ``d`` avoiding ``N[b] | N[c]`` closes a hole through the P4.
    Longer minimum lengths use exact enumeration of chordless cycles, which
    is only offered for ``n <= 16``.
    """
    if min_len < 5:
        raise ValueError("holes have length at least 5")
    if min_len == 5:
        cycle = next(filter(None, (_hole_via_p4(g, piece) for piece in module_pieces(g))), None)
    elif g.n <= EXACT_HOLE_MAX_N:
        cycle = _hole_exhaustive(g, min_len)
    else:
        raise UnsupportedError(f"exact hole search with min_len={min_len} needs n <= {EXACT_HOLE_MAX_N}")
    if cycle is not None:
        assert is_hole(g, cycle, min_len), cycle
    return cycle


@dataclass(frozen=True)
class Hole:
    """A hole witness, vertices in cycle order."""

    cycle: tuple[int, ...]

    def edges(self) -> list[tuple[int, int]]:
        k = len(self.cycle)
        return [(self.cycle[i], self.cycle[(i + 1) % k]) for i in range(k)]

    def is_valid_in(self, g: Graph, min_len: int = 5) -> bool:
        return is_hole(g, self.cycle, min_len)


Witness = Union[Embedding, Hole]


@dataclass(frozen=True)
class ClassSpec:
    """Hereditary class: no induced copy of any ``forbidden`` pattern, and no
    hole at all when ``hole_free`` is set."""

    forbidden: tuple[PatternId, ...]
    hole_free: bool = False
    name: str = ""

    def __post_init__(self):
        if not self.forbidden and not self.hole_free:
            raise ValueError("a class needs at least one forbidden pattern or hole_free")
        object.__setattr__(self, "forbidden", tuple(self.forbidden))

    def __str__(self):
        if self.name:
            return self.name
        parts = (["hole"] if self.hole_free else []) + [p.value for p in self.forbidden]
        return "(" + ",".join(parts) + ")-free"


P6_S113_FREE = ClassSpec((PatternId.P6, PatternId.S113), name="p6-s113-free")
P6_BULL_FREE = ClassSpec((PatternId.P6, PatternId.BULL), name="p6-bull-free")
HOLE_BANNER_FREE = ClassSpec((PatternId.BANNER,), hole_free=True, name="hole-banner-free")
BANNER_FREE = ClassSpec((PatternId.BANNER,), name="banner-free")
HOLE_FREE = ClassSpec((), hole_free=True, name="hole-free")

NAMED_CLASSES = {c.name: c for c in (P6_S113_FREE, P6_BULL_FREE, HOLE_BANNER_FREE, BANNER_FREE, HOLE_FREE)}


def parse_class(text: str) -> ClassSpec:
    """Named class (``p6-bull-free``) or a comma list such as ``P5,hole,claw``."""
    if text in NAMED_CLASSES:
        return NAMED_CLASSES[text]
    names = [t for t in text.replace("-free", "").strip("()").split(",") if t.strip()]
    hole = any(t.strip().lower() == "hole" for t in names)
    pats = tuple(PatternId.parse(t) for t in names if t.strip().lower() != "hole")
    return ClassSpec(pats, hole_free=hole)


def class_violation(g: Graph, cls: ClassSpec) -> Witness | None:
    """First witness that ``g`` is outside ``cls`` (patterns in order, then holes)."""
    for p in cls.forbidden:
        emb = find_induced(g, p)
        if emb is not None:
            return emb
    if cls.hole_free:
        cycle = find_hole(g, 5)
        if cycle is not None:
            return Hole(cycle)
    return None


def is_in_class(g: Graph, cls: ClassSpec) -> bool:
    return class_violation(g, cls) is None
