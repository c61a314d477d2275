"""Modules, clique separators and atoms, and the nearly-chordal test.

Every routine accepts an optional ``within`` bitmask and then works on the
induced subgraph ``g[within]`` without relabelling, so results are always in
the caller's vertex labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from perfcode.graph import Graph, VertexSet, chordality, component_masks, iter_bits

# ----------------------------------------------------------------------- modules


def module_closure(g: Graph, u: int, v: int, within: int) -> int:
    """Smallest module of ``g[within]`` containing ``u`` and ``v``."""
    bits = g.adjacency_bits
    nu = bits[u] & within
    members = 1 << u
    pending = 1 << v
    while pending:
        x = (pending & -pending).bit_length() - 1
        pending ^= 1 << x
        members |= 1 << x
        pending |= ((bits[x] & within) ^ nu) & ~members
    return members


def modules_avoiding(g: Graph, v: int, within: int | None = None) -> list[int]:
    """Maximal modules of ``g[within]`` not containing ``v``.

    Partition refinement from ``{N(v), non-N(v)}``: a part is split by any
    outside vertex that sees some but not all of it. At the fixpoint every
    part is a module, and no module avoiding ``v`` is ever cut.
    """
    within = g.full_mask if within is None else within
    bits = g.adjacency_bits
    start = [bits[v] & within, within & ~bits[v] & ~(1 << v)]
    parts = [p for p in start if p]
    changed = True
    while changed:
        changed = False
        for z in iter_bits(within):
            nz = bits[z]
            refined = []
            for part in parts:
                if part & (part - 1) and not part >> z & 1:
                    inside = part & nz
                    if inside and inside != part:
                        refined.append(inside)
                        refined.append(part ^ inside)
                        changed = True
                        continue
                refined.append(part)
            parts = refined
    return sorted(parts, key=lambda p: p & -p)


def find_nontrivial_module_mask(g: Graph, within: int | None = None) -> int | None:
    within = g.full_mask if within is None else within
    if within.bit_count() < 3:
        return None
    u = (within & -within).bit_length() - 1
    for v in iter_bits(within & ~(1 << u)):
        closure = module_closure(g, u, v, within)
        if closure != within:
            return closure
    for part in modules_avoiding(g, u, within):
        if part & (part - 1):
            return part
    return None


def find_nontrivial_module(g: Graph) -> VertexSet | None:
    """A module ``M`` with ``1 < |M| < n``, or ``None`` if ``g`` is prime.

    Pair closures ``{u, v}`` for a fixed ``u`` catch every nontrivial module
    containing ``u``; the partition refinement catches those avoiding it.
    """
    if g.n < 2:
        raise ValueError("module search needs at least 2 vertices")
    found = find_nontrivial_module_mask(g)
    return None if found is None else tuple(iter_bits(found))


def is_module(g: Graph, members) -> bool:
    mask = 0
    for v in members:
        mask |= 1 << v
    for z in range(g.n):
        if mask >> z & 1:
            continue
        seen = g.bits(z) & mask
        if seen and seen != mask:
            return False
    return True


def is_prime(g: Graph) -> bool:
    return g.n < 3 or find_nontrivial_module_mask(g) is None


# ------------------------------------------------------------- clique separators


def lex_m(g: Graph, within: int | None = None) -> tuple[list[int], dict[int, int]]:
    """Lex-M minimal elimination ordering of ``g[within]``.

    Returns ``(order, higher)`` where ``order`` is the elimination order
    (first eliminated first) and ``higher[x]`` is the set of later
    neighbours of ``x`` in the resulting minimal triangulation, as a bitmask.
    """
    within = g.full_mask if within is None else within
    bits = g.adjacency_bits
    labels = {v: () for v in iter_bits(within)}
    higher = {v: 0 for v in labels}
    unnumbered = within
    picked = []
    k = within.bit_count()
    while unnumbered:
        v = max(iter_bits(unnumbered), key=lambda x: (labels[x], -x))
        unnumbered &= ~(1 << v)
        picked.append(v)
        number = k - len(picked) + 1
        # classes of unnumbered vertices by increasing label
        classes: dict[tuple, int] = {}
        for u in iter_bits(unnumbered):
            classes[labels[u]] = classes.get(labels[u], 0) | 1 << u
        reach = 1 << v
        region = 1 << v
        for lab in sorted(classes):
            cls = classes[lab]
            # grow ``reach`` inside ``region`` (v plus all strictly smaller classes)
            frontier = reach
            while frontier:
                nb = 0
                for x in iter_bits(frontier):
                    nb |= bits[x]
                frontier = nb & region & ~reach
                reach |= frontier
            touched = 0
            for x in iter_bits(reach):
                touched |= bits[x]
            for u in iter_bits(cls & touched):
                labels[u] = labels[u] + (number,)
                higher[u] |= 1 << v
            region |= cls
    return picked[::-1], higher


def clique_separator(g: Graph, within: int | None = None) -> tuple[int, int] | None:
    """First clique separator along a Lex-M ordering of connected ``g[within]``.

    Returns ``(component, separator)`` bitmasks: ``separator`` is a clique
    whose removal cuts ``component`` off from a non-empty remainder.
    """
    within = g.full_mask if within is None else within
    order, higher = lex_m(g, within)
    for x in order:
        sep = higher[x]
        if not sep or not g.is_clique(sep):
            continue
        comps = component_masks(g, within & ~sep)
        if len(comps) < 2:
            continue
        return _minimal_split(g, within, x, next(c for c in comps if not c >> x & 1))
    return None


def _neighbourhood(g: Graph, mask: int, within: int) -> int:
    nb = 0
    for v in iter_bits(mask):
        nb |= g.bits(v)
    return nb & within & ~mask


def _minimal_split(g: Graph, within: int, x: int, other: int) -> tuple[int, int]:
    # N(other) separates x from other; the x-side full component of that
    # separator has a minimal (x, other) separator as its neighbourhood.
    sep = _neighbourhood(g, other, within)
    comp = next(c for c in component_masks(g, within & ~sep) if c >> x & 1)
    return comp, _neighbourhood(g, comp, within)


@dataclass(frozen=True)
class AtomNode:
    """Node of a clique-separator decomposition.

    Leaves have ``separator is None``. Internal nodes split ``vertices`` by
    the clique ``separator`` into ``children[0]`` (a component plus the
    separator) and ``children[1]`` (everything else plus the separator).
    """

    vertices: VertexSet
    separator: VertexSet | None = None
    children: tuple["AtomNode", ...] = field(default=())

    @property
    def is_leaf(self) -> bool:
        return self.separator is None

    def walk(self) -> Iterator["AtomNode"]:
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass(frozen=True)
class AtomTree:
    root: AtomNode

    @property
    def atoms(self) -> list[VertexSet]:
        return [node.vertices for node in self.root.walk() if node.is_leaf]

    @property
    def separators(self) -> list[VertexSet]:
        return [node.separator for node in self.root.walk() if not node.is_leaf]


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def atom_tree_mask(g: Graph, within: int) -> AtomNode:
    budget = [max(within.bit_count() - 1, 0)]

    def build(mask):
        split = clique_separator(g, mask)
        if split is None:
            return AtomNode(tuple(iter_bits(mask)))
        budget[0] -= 1
        assert budget[0] >= 0, "more clique separators than n - 1"
        comp, sep = split
        left = build(comp | sep)
        right = build(mask & ~comp)
        return AtomNode(tuple(iter_bits(mask)), tuple(iter_bits(sep)), (left, right))

    return build(within)


def atoms(g: Graph, within: int | None = None) -> AtomTree:
    """Clique-separator decomposition of a connected graph into atoms."""
    within = g.full_mask if within is None else within
    if within and len(component_masks(g, within)) != 1:
        raise ValueError("atom decomposition needs a connected graph; split components first")
    return AtomTree(atom_tree_mask(g, within))


def has_clique_separator_bruteforce(g: Graph, within: int | None = None) -> bool:
    """Exhaustive check over all vertex subsets (small graphs only)."""
    within = g.full_mask if within is None else within
    verts = list(iter_bits(within))
    for r in range(1 << len(verts)):
        sep = 0
        for i, v in enumerate(verts):
            if r >> i & 1:
                sep |= 1 << v
        if sep == within or not g.is_clique(sep):
            continue
        if len(component_masks(g, within & ~sep)) > 1:
            return True
    return False


# --------------------------------------------------------------- nearly chordal


def nearly_chordal_violation(g: Graph, within: int | None = None) -> tuple[int, tuple[int, ...]] | None:
    """``(v, cycle)`` where ``g[within] - N[v]`` has chordless ``cycle``; ``None``
    when every such anti-neighbourhood is chordal."""
    within = g.full_mask if within is None else within
    for v in iter_bits(within):
        res = chordality(g, within & ~g.closed_bits(v))
        if not res.is_chordal:
            return v, res.cycle
    return None


def is_nearly_chordal(g: Graph) -> bool:
    return nearly_chordal_violation(g) is None
