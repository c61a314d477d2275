"""Maximum weight independent set solvers.

All solvers share two conventions:

* the empty set is feasible, so the optimum is never negative and vertices of
  non-positive weight are never chosen;
* ties are broken towards the lexicographically smallest optimal vertex set
  (among sets of positive-weight vertices). This is done by solving on the
  exact integer weights ``w(v) * 2**n + 2**(n-1-v)``, which have a unique
  optimum that is also optimal, and lexicographically least, for ``w``.
"""

from __future__ import annotations

import enum
import logging
import sys
import time
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass

from perfcode import _kernels
from perfcode.decompose import (
    AtomNode,
    atom_tree_mask,
    find_nontrivial_module_mask,
    modules_avoiding,
    nearly_chordal_violation,
)
from perfcode.errors import CapExceeded, ClassViolation, NotChordalError, StructureViolation
from perfcode.graph import Graph, WeightedGraph, chordality, component_masks, iter_bits

log = logging.getLogger(__name__)

EXACT_CAP = 40

#: call counters and per-stage seconds; ``STATS["mwis_exact"]`` is what the
#: polynomial-path checks assert stays at zero
STATS: Counter = Counter()


class SolutionKind(enum.Enum):
    INDEPENDENT_SET = "independent_set"
    EFFICIENT_DOMINATING_SET = "efficient_dominating_set"


@dataclass(frozen=True)
class Solution:
    vertices: tuple[int, ...]
    total_weight: int
    kind: SolutionKind = SolutionKind.INDEPENDENT_SET

    def verify(self, wg: WeightedGraph) -> "Solution":
        """Raise ``AssertionError`` unless independent and weight-consistent."""
        g = wg.graph
        mask = 0
        for v in self.vertices:
            mask |= 1 << v
        assert list(self.vertices) == sorted(set(self.vertices)), "vertices not strictly increasing"
        assert g.is_independent(mask), f"{self.vertices} is not independent"
        assert wg.weight_of(self.vertices) == self.total_weight, "weight mismatch"
        return self


def tiebreak_weights(weights) -> list[int]:
    """Positive weights scaled and perturbed so the optimum is unique and lex-least."""
    n = len(weights)
    return [(w << n) + (1 << (n - 1 - v)) if w > 0 else 0 for v, w in enumerate(weights)]


def _positive(pw, within) -> int:
    mask = 0
    for v in iter_bits(within):
        if pw[v] > 0:
            mask |= 1 << v
    return mask


def _finish(wg: WeightedGraph, chosen: int) -> Solution:
    verts = tuple(iter_bits(chosen))
    return Solution(verts, wg.weight_of(verts)).verify(wg)


@contextmanager
def _stage(name):
    t0 = time.perf_counter()
    try:
        yield
    finally:
        dt = time.perf_counter() - t0
        STATS[f"seconds:{name}"] += dt
        log.debug("stage %s took %.4fs", name, dt)


# ------------------------------------------------------------------- exact


def _exact_core(g: Graph, pw, within: int) -> tuple[int, int]:
    value, chosen = 0, 0
    bits = g.adjacency_bits
    for comp in component_masks(g, _positive(pw, within)):
        verts = list(iter_bits(comp))
        index = {v: i for i, v in enumerate(verts)}
        local = []
        for v in verts:
            b = 0
            for u in iter_bits(bits[v] & comp):
                b |= 1 << index[u]
            local.append(b)
        val, sel = _kernels.mwis_bitmask(local, [pw[v] for v in verts], (1 << len(verts)) - 1)
        value += val
        for i in iter_bits(sel):
            chosen |= 1 << verts[i]
    return value, chosen


def exact_mask(g: Graph, weights, cap: int | None = EXACT_CAP) -> int:
    """Chosen-vertex bitmask of the tie-broken exact optimum for raw ``weights``."""
    if cap is not None and g.n > cap:
        raise CapExceeded(f"mwis_exact: n={g.n} exceeds cap {cap}; pass cap=None to override")
    STATS["mwis_exact"] += 1
    return _exact_core(g, tiebreak_weights(weights), g.full_mask)[1]


def mwis_exact(wg: WeightedGraph, cap: int | None = EXACT_CAP) -> Solution:
    """Exact MWIS by branch and bound (max-degree branching, clique-cover bound).

    Refuses graphs with more than ``cap`` vertices unless ``cap=None``.
    """
    return _finish(wg, exact_mask(wg.graph, wg.weights, cap))


# ------------------------------------------------------------------- chordal


def _chordal_core(g: Graph, pw, within: int, peo=None) -> tuple[int, int]:
    """Frank's weight-shifting pass along a perfect elimination ordering."""
    within = _positive(pw, within)
    if not within:
        return 0, 0
    if peo is None:
        res = chordality(g, within)
        if not res.is_chordal:
            raise NotChordalError("graph is not chordal", res.cycle)
        peo = res.peo
    resid = {v: pw[v] for v in peo}
    later = within
    red = []
    value = 0
    for v in peo:
        later &= ~(1 << v)
        r = resid[v]
        if r > 0:
            red.append(v)
            value += r
            for u in iter_bits(g.bits(v) & later):
                resid[u] -= r
    chosen = 0
    for v in reversed(red):
        if not g.bits(v) & chosen:
            chosen |= 1 << v
    return value, chosen


def mwis_chordal(wg: WeightedGraph) -> Solution:
    """Exact MWIS on a chordal graph in linear time (per elimination ordering).

    Raises :class:`NotChordalError` with a chordless cycle otherwise.
    """
    g = wg.graph
    res = chordality(g)
    if not res.is_chordal:
        raise NotChordalError("mwis_chordal needs a chordal graph", res.cycle)
    STATS["mwis_chordal"] += 1
    pw = tiebreak_weights(wg.weights)
    _, chosen = _chordal_core(g, pw, g.full_mask)
    return _finish(wg, chosen)


# ------------------------------------------------------------- nearly chordal


def _nearly_chordal_core(g: Graph, pw, within: int) -> tuple[int, int]:
    within = _positive(pw, within)
    best_val, best_set = 0, 0
    for v in iter_bits(within):
        val, sel = _chordal_core(g, pw, within & ~g.closed_bits(v))
        val += pw[v]
        if val > best_val:
            best_val, best_set = val, sel | 1 << v
    return best_val, best_set


def mwis_nearly_chordal(wg: WeightedGraph) -> Solution:
    """Exact MWIS when every ``G - N[v]`` is chordal: best of
    ``w(v) + MWIS(G - N[v])`` over all ``v``, or the empty set."""
    g = wg.graph
    bad = nearly_chordal_violation(g)
    if bad is not None:
        v, cycle = bad
        raise NotChordalError(f"G - N[{v}] is not chordal", cycle, vertex=v)
    STATS["mwis_nearly_chordal"] += 1
    pw = tiebreak_weights(wg.weights)
    _, chosen = _nearly_chordal_core(g, pw, g.full_mask)
    return _finish(wg, chosen)


# --------------------------------------------------- (hole, banner)-free pipeline


class _Pipeline:
    """Components, then module contraction, then clique-separator atoms each
    solved as nearly chordal. Works on masks over the original graph."""

    def __init__(self, g: Graph):
        self.g = g
        self.checked_atoms: set[int] = set()

    def solve(self, pw: dict, within: int) -> tuple[int, int]:
        within = _positive(pw, within)
        if not within:
            return 0, 0
        comps = component_masks(self.g, within)
        if len(comps) > 1:
            value, chosen = 0, 0
            for comp in comps:
                val, sel = self.solve(pw, comp)
                value += val
                chosen |= sel
            return value, chosen
        if within & (within - 1) == 0:
            v = within.bit_length() - 1
            return pw[v], within
        return self._solve_connected(pw, within)

    def _modules(self, quotient: int) -> list[int]:
        u = (quotient & -quotient).bit_length() - 1
        parts = [p for p in modules_avoiding(self.g, u, quotient) if p & (p - 1)]
        if parts:
            return parts
        found = find_nontrivial_module_mask(self.g, quotient)
        return [] if found is None else [found]

    def _solve_connected(self, pw: dict, within: int) -> tuple[int, int]:
        weights = {v: pw[v] for v in iter_bits(within)}
        expansion: dict[int, int] = {}
        quotient = within
        with _stage("modules"):
            while quotient.bit_count() > 2:
                mods = self._modules(quotient)
                if not mods:
                    break
                for mod in mods:
                    val, sel = self.solve(weights, mod)
                    sel = self._expand(sel, expansion)
                    rep = (mod & -mod).bit_length() - 1
                    weights[rep] = val
                    expansion[rep] = sel
                    quotient &= ~(mod & ~(1 << rep))
                STATS["module_contractions"] += len(mods)
        if quotient & (quotient - 1) == 0:
            v = quotient.bit_length() - 1
            return weights[v], self._expand(quotient, expansion)
        if quotient.bit_count() == 2:
            # connected, so an edge: keep the heavier end
            v = max(iter_bits(quotient), key=weights.__getitem__)
            return weights[v], self._expand(1 << v, expansion)
        with _stage("atoms"):
            tree = atom_tree_mask(self.g, quotient)
        val, sel = self._solve_node(tree, weights)
        return val, self._expand(sel, expansion)

    @staticmethod
    def _expand(sel: int, expansion: dict) -> int:
        out = 0
        for v in iter_bits(sel):
            out |= expansion.get(v, 1 << v)
        return out

    def _check_atom(self, mask: int) -> None:
        if mask in self.checked_atoms:
            return
        bad = nearly_chordal_violation(self.g, mask)
        if bad is not None:
            v, cycle = bad
            raise StructureViolation(
                f"atom {tuple(iter_bits(mask))} is not nearly chordal: G - N[{v}] has a chordless cycle",
                tuple(iter_bits(mask)), v, cycle,
            )
        self.checked_atoms.add(mask)

    def _solve_node(self, node: AtomNode, w: dict) -> tuple[int, int]:
        g = self.g
        if node.is_leaf:
            mask = 0
            for v in node.vertices:
                mask |= 1 << v
            self._check_atom(mask)
            STATS["atoms_solved"] += 1
            return _nearly_chordal_core(g, w, mask)
        left, right = node.children
        sep = 0
        for v in node.separator:
            sep |= 1 << v
        w_left = {v: (0 if sep >> v & 1 else w[v]) for v in left.vertices}
        base_val, base_sel = self._solve_node(left, w_left)
        w_right = {v: w[v] for v in right.vertices}
        with_c = {}
        for c in node.separator:
            if w[c] <= 0:
                continue
            nc = g.bits(c)
            w_c = {v: (0 if nc >> v & 1 else x) for v, x in w_left.items()}
            val, sel = self._solve_node(left, w_c)
            w_right[c] = w[c] + val - base_val
            with_c[c] = sel
        val, sel = self._solve_node(right, w_right)
        picked = sel & sep
        if picked:
            c = picked.bit_length() - 1
            sel |= with_c[c]
        else:
            sel |= base_sel
        return base_val + val, sel


def mwis_hole_banner_free(wg: WeightedGraph, check_class: bool = False) -> Solution:
    """Exact MWIS for (hole, banner)-free graphs without exhaustive search.

    Components are solved separately, nontrivial modules are contracted to a
    representative weighted by the module's own optimum, and the prime
    quotient is split along clique separators; each atom must be nearly
    chordal, otherwise :class:`StructureViolation` is raised. The result is
    exact whenever no exception is raised, on any input graph.
    """
    g = wg.graph
    if check_class:
        from perfcode.patterns import HOLE_BANNER_FREE, class_violation

        witness = class_violation(g, HOLE_BANNER_FREE)
        if witness is not None:
            raise ClassViolation("graph is not (hole, banner)-free", witness)
    return _finish(wg, hole_banner_free_mask(g, wg.weights))


def hole_banner_free_mask(g: Graph, weights) -> int:
    """Chosen-vertex bitmask of the pipeline optimum for raw ``weights``."""
    STATS["mwis_hole_banner_free"] += 1
    pw = tiebreak_weights(weights)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 20 * g.n + 1000))
    try:
        return _Pipeline(g).solve(dict(enumerate(pw)), g.full_mask)[1]
    finally:
        sys.setrecursionlimit(old_limit)
