"""Weighted efficient domination via MWIS on the graph square.

A set ``D`` is independent in ``G^2`` exactly when the closed neighbourhoods
``N[v]`` (``v`` in ``D``) are pairwise disjoint, and it is an efficient
dominating set exactly when those neighbourhoods also cover ``V``. Giving
every vertex the weight ``M * |N[v]| + s * w(v)`` with ``M`` large makes every
maximum weight independent set of ``G^2`` an optimal e.d. whenever one exists.
"""

from __future__ import annotations

import enum

from perfcode import _kernels
from perfcode.errors import CapExceeded, ClassViolation, StructureViolation
from perfcode.graph import Graph, WeightedGraph, iter_bits, square, to_mask
from perfcode.mwis import EXACT_CAP, Solution, SolutionKind, exact_mask, hole_banner_free_mask
from perfcode.patterns import P6_BULL_FREE, P6_S113_FREE, class_violation

BRUTE_FORCE_MAX_N = 20


class Objective(enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"
    EXISTS_ONLY = "exists"


class Strategy(enum.Enum):
    AUTO = "auto"
    P6_S113 = "p6-s113"
    P6_BULL = "p6-bull"
    EXACT = "exact"


def ed_violation(g: Graph, d) -> int | None:
    """First vertex (by index) breaking efficient domination by ``d``, else ``None``.

    A member of ``d`` breaks it by having a neighbour in ``d``; a non-member
    by having zero or at least two neighbours in ``d``.
    """
    mask = to_mask(d)
    for v in range(g.n):
        k = (g.bits(v) & mask).bit_count()
        if mask >> v & 1:
            if k:
                return v
        elif k != 1:
            return v
    return None


def is_efficient_dominating(g: Graph, d) -> bool:
    return ed_violation(g, d) is None


def brute_force_eds(g: Graph) -> list[tuple[int, ...]]:
    """Every efficient dominating set of ``g``, sorted lexicographically.

    Enumerates vertex sets whose closed neighbourhoods partition ``V``
    (independent sets of ``G^2`` covering all ``n`` vertices).
    """
    if g.n > BRUTE_FORCE_MAX_N:
        raise CapExceeded(f"brute_force_eds supports n <= {BRUTE_FORCE_MAX_N}, got {g.n}")
    if g.n == 0:
        return [()]
    closed = [g.closed_bits(v) for v in range(g.n)]
    found = [tuple(iter_bits(m)) for m in _kernels.exact_covers(closed, g.full_mask)]
    return sorted(found)


def has_efficient_dominating_set(g: Graph) -> bool:
    return bool(brute_force_eds(g))


def best_ed_bruteforce(wg: WeightedGraph, objective: Objective) -> Solution | None:
    """Optimal e.d. by enumeration; ties go to the lexicographically smallest set."""
    eds = brute_force_eds(wg.graph)
    if not eds:
        return None
    if objective is Objective.MINIMIZE:
        best = min(eds, key=lambda d: (wg.weight_of(d), d))
    elif objective is Objective.MAXIMIZE:
        best = min(eds, key=lambda d: (-wg.weight_of(d), d))
    else:
        best = eds[0]
    return Solution(best, wg.weight_of(best), SolutionKind.EFFICIENT_DOMINATING_SET)


def reduction_weights(wg: WeightedGraph, objective: Objective) -> tuple[list[int], int, int]:
    """Weights on ``G^2`` plus ``(M, sign)``.

    ``M = 1 + 2 * sum|w|`` keeps any e.d. (value >= ``M*n - sum|w|``) strictly
    above any independent set of ``G^2`` missing a vertex (value <=
    ``M*(n-1) + sum|w|``).
    """
    g = wg.graph
    if objective is Objective.EXISTS_ONLY:
        return [g.degree(v) + 1 for v in range(g.n)], 1, 0
    sign = -1 if objective is Objective.MINIMIZE else 1
    big = 1 + 2 * sum(abs(x) for x in wg.weights)
    return [big * (g.degree(v) + 1) + sign * wg.weights[v] for v in range(g.n)], big, sign


def resolve_strategy(g: Graph, strategy: Strategy) -> Strategy:
    if strategy is not Strategy.AUTO:
        return strategy
    if class_violation(g, P6_BULL_FREE) is None:
        return Strategy.P6_BULL
    if class_violation(g, P6_S113_FREE) is None:
        return Strategy.P6_S113
    return Strategy.EXACT


def solve_wed(
    wg: WeightedGraph,
    objective: Objective = Objective.MINIMIZE,
    strategy: Strategy = Strategy.AUTO,
    check_class: bool = False,
    exact_cap: int | None = EXACT_CAP,
) -> Solution | None:
    """Optimal efficient dominating set, or ``None`` if ``g`` has none.

    ``p6-bull`` solves the square with the (hole, banner)-free pipeline (no
    exhaustive search), ``p6-s113`` and ``exact`` with branch and bound, and
    ``auto`` picks by class membership. With ``check_class`` the input's
    class is verified first and :class:`ClassViolation` raised on failure.
    """
    g = wg.graph
    if g.n == 0:
        return Solution((), 0, SolutionKind.EFFICIENT_DOMINATING_SET)
    strategy = resolve_strategy(g, strategy)
    required = {Strategy.P6_BULL: P6_BULL_FREE, Strategy.P6_S113: P6_S113_FREE}.get(strategy)
    if check_class and required is not None:
        witness = class_violation(g, required)
        if witness is not None:
            raise ClassViolation(f"input is not {required}", witness)

    weights, big, sign = reduction_weights(wg, objective)
    sq = square(g)
    if strategy is Strategy.P6_BULL:
        try:
            chosen = hole_banner_free_mask(sq, weights)
        except StructureViolation as exc:
            # for a (P6, bull)-free graph with an e.d. the square is
            # (hole, banner)-free, so a failed atom means no e.d.
            witness = class_violation(g, P6_BULL_FREE)
            if witness is None:
                return None
            raise ClassViolation("input is not p6-bull-free and its square is not (hole, banner)-free",
                                 witness) from exc
    else:
        chosen = exact_mask(sq, weights, exact_cap)

    d = tuple(iter_bits(chosen))
    assert sq.is_independent(chosen)
    covered = sum(g.degree(v) + 1 for v in d)
    value = sum(weights[v] for v in d)
    slack = sum(abs(x) for x in wg.weights) if sign else 0
    exists = value >= big * g.n - slack
    assert exists == (covered == g.n), "reduction threshold disagrees with coverage"
    if not exists:
        return None
    assert is_efficient_dominating(g, d)
    if sign:
        assert sign * wg.weight_of(d) == value - big * g.n
    return Solution(d, wg.weight_of(d), SolutionKind.EFFICIENT_DOMINATING_SET)
