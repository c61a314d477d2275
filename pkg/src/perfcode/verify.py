"""Fuzzing structural statements about squares and atoms.

Each :class:`Theorem` binds a class precondition (optionally with "has an
e.d." and "is prime") to a conclusion checker that either returns ``None``
or a self-certifying witness against the conclusion. :func:`fuzz` samples
qualified graphs with :mod:`perfcode.gen` and collects counterexamples.
"""

from __future__ import annotations

import enum
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Union

from perfcode.decompose import atoms, is_prime, nearly_chordal_violation
from perfcode.errors import CapExceeded
from perfcode.gen import GenConfig, make_rng, random_in_class
from perfcode.graph import Graph, chordality, square, to_mask
from perfcode.patterns import (
    BANNER_FREE,
    HOLE_BANNER_FREE,
    P6_BULL_FREE,
    P6_S113_FREE,
    ClassSpec,
    Embedding,
    Hole,
    PatternId,
    find_hole,
    find_induced,
    is_hole,
    is_in_class,
)
from perfcode.wed import BRUTE_FORCE_MAX_N, has_efficient_dominating_set


class Verdict(enum.Enum):
    NOT_APPLICABLE = "not_applicable"
    PASS = "pass"
    VIOLATION = "violation"


@dataclass(frozen=True)
class AtomWitness:
    """Atom ``atom`` whose part outside ``N[vertex]`` has the chordless ``cycle``."""

    atom: tuple[int, ...]
    vertex: int | None
    cycle: tuple[int, ...]

    def is_valid_in(self, g: Graph) -> bool:
        allowed = to_mask(self.atom)
        if self.vertex is not None:
            if self.vertex not in self.atom:
                return False
            allowed &= ~g.closed_bits(self.vertex)
        inside = all(allowed >> v & 1 for v in self.cycle)
        return inside and len(self.cycle) >= 4 and _chordless(g, self.cycle)


def _chordless(g: Graph, cycle) -> bool:
    # a chordless cycle of length k is a hole of length k
    return is_hole(g, cycle, min_len=3)


WitnessT = Union[Embedding, Hole, AtomWitness]


# ------------------------------------------------------------------ conclusions


def _square_pattern(pattern: PatternId) -> Callable[[Graph], WitnessT | None]:
    def check(g: Graph):
        return find_induced(square(g), pattern)

    check.__name__ = f"square_{pattern.value}_free"
    return check


def _pattern(pattern: PatternId) -> Callable[[Graph], WitnessT | None]:
    def check(g: Graph):
        return find_induced(g, pattern)

    check.__name__ = f"{pattern.value}_free"
    return check


def _square_big_hole(g: Graph) -> Hole | None:
    cycle = find_hole(square(g), 6)
    return None if cycle is None else Hole(cycle)


def _atom_cycle(g: Graph, nearly: bool) -> AtomWitness | None:
    if g.n < 3:
        return None
    for atom in atoms(g).atoms:
        mask = to_mask(atom)
        if nearly:
            found = nearly_chordal_violation(g, mask)
            if found is not None:
                return AtomWitness(atom, found[0], tuple(found[1]))
        else:
            res = chordality(g, mask)
            if not res.is_chordal:
                return AtomWitness(atom, None, tuple(res.cycle))
    return None


def _atoms_nearly_chordal(g: Graph) -> AtomWitness | None:
    return _atom_cycle(g, nearly=True)


def _atoms_chordal(g: Graph) -> AtomWitness | None:
    return _atom_cycle(g, nearly=False)


def _witness_holds(g: Graph, witness: WitnessT, min_hole: int, on_square: bool) -> bool:
    if isinstance(witness, AtomWitness):
        return witness.is_valid_in(g)
    host = square(g) if on_square else g
    if isinstance(witness, Hole):
        return witness.is_valid_in(host, min_hole)
    return witness.is_valid_in(host)


# ---------------------------------------------------------------------- registry


@dataclass(frozen=True)
class Theorem:
    """A fuzzable statement: members of ``cls`` (with an e.d. and/or prime when
    required) never yield a witness from ``conclusion``. Embeddings and holes
    live in the square when ``on_square`` is set, else in the graph itself."""

    name: str
    cls: ClassSpec
    conclusion: Callable[[Graph], WitnessT | None]
    requires_ed: bool = False
    requires_prime: bool = False
    min_hole: int = 6
    on_square: bool = True
    mutant: bool = False
    statement: str = ""

    def validates(self, g: Graph, witness: WitnessT) -> bool:
        return _witness_holds(g, witness, self.min_hole, self.on_square)


class TheoremId(enum.Enum):
    THM2_SQUARE_P5FREE = "thm2_square_p5free"
    THM5I_SQUARE_NO_BIG_CYCLES = "thm5i_square_no_big_cycles"
    THM5II_SQUARE_C5FREE = "thm5ii_square_c5free"
    THM6_SQUARE_BANNERFREE = "thm6_square_bannerfree"
    THM9_ATOMS_NEARLY_CHORDAL = "thm9_atoms_nearly_chordal"
    LEMMA_PRIME_BANNERFREE_K23FREE = "lemma_prime_bannerfree_k23free"

    @property
    def theorem(self) -> Theorem:
        return THEOREMS[self.value]

    @property
    def short(self) -> str:
        return self.value.split("_", 1)[0] if self.value.startswith("thm") else "lemma-k23"


_STATEMENTS = [
    Theorem(TheoremId.THM2_SQUARE_P5FREE.value, P6_S113_FREE, _square_pattern(PatternId.P5),
            requires_ed=True, statement="(P6,S113)-free with an e.d. => square is P5-free"),
    Theorem(TheoremId.THM5I_SQUARE_NO_BIG_CYCLES.value, P6_BULL_FREE, _square_big_hole,
            statement="(P6,bull)-free => square has no chordless cycle of length >= 6"),
    Theorem(TheoremId.THM5II_SQUARE_C5FREE.value, P6_BULL_FREE, _square_pattern(PatternId.C5),
            requires_ed=True, statement="(P6,bull)-free with an e.d. => square is C5-free"),
    Theorem(TheoremId.THM6_SQUARE_BANNERFREE.value, P6_BULL_FREE, _square_pattern(PatternId.BANNER),
            requires_ed=True, statement="(P6,bull)-free with an e.d. => square is banner-free"),
    Theorem(TheoremId.THM9_ATOMS_NEARLY_CHORDAL.value, HOLE_BANNER_FREE, _atoms_nearly_chordal,
            requires_prime=True, statement="prime (hole,banner)-free => every atom is nearly chordal"),
    Theorem(TheoremId.LEMMA_PRIME_BANNERFREE_K23FREE.value, BANNER_FREE, _pattern(PatternId.K23),
            requires_prime=True, on_square=False, statement="prime banner-free => K2,3-free"),
]

# Deliberately false statements; the harness must find counterexamples.
_MUTANTS = [
    Theorem("mut_square_triangle_free", P6_BULL_FREE, _square_pattern(PatternId.C3), mutant=True,
            statement="(P6,bull)-free => square is triangle-free"),
    Theorem("mut_square_p4_free", P6_S113_FREE, _square_pattern(PatternId.P4), requires_ed=True, mutant=True,
            statement="(P6,S113)-free with an e.d. => square is P4-free"),
    Theorem("mut_square_p3_free", P6_BULL_FREE, _square_pattern(PatternId.P3), requires_ed=True, mutant=True,
            statement="(P6,bull)-free with an e.d. => square is a disjoint union of cliques"),
    Theorem("mut_prime_claw_free", BANNER_FREE, _pattern(PatternId.CLAW), requires_prime=True, on_square=False,
            mutant=True, statement="prime banner-free => claw-free"),
    Theorem("mut_atoms_chordal", HOLE_BANNER_FREE, _atoms_chordal, requires_prime=True, mutant=True,
            statement="prime (hole,banner)-free => every atom is chordal"),
]

THEOREMS: dict[str, Theorem] = {t.name: t for t in _STATEMENTS + _MUTANTS}
MUTANTS: tuple[str, ...] = tuple(t.name for t in _MUTANTS)


def get_theorem(t: Union[Theorem, TheoremId, str]) -> Theorem:
    """Resolve a theorem object, id, full name or short name (``thm6``, ``lemma-k23``)."""
    if isinstance(t, Theorem):
        return t
    if isinstance(t, TheoremId):
        return t.theorem
    key = t.strip().lower()
    if key in THEOREMS:
        return THEOREMS[key]
    for tid in TheoremId:
        if key in (tid.short, tid.short.replace("-", "_")):
            return tid.theorem
    raise ValueError(f"unknown theorem {t!r}; choose from {', '.join(THEOREMS)}")


# ------------------------------------------------------------------ single check


@dataclass(frozen=True)
class CheckResult:
    verdict: Verdict
    witness: WitnessT | None = None


def check_theorem(t: Union[Theorem, TheoremId, str], g: Graph) -> CheckResult:
    """Precondition with exact oracles, then the conclusion checker."""
    th = get_theorem(t)
    if th.requires_ed:
        if g.n > BRUTE_FORCE_MAX_N:
            raise CapExceeded(f"{th.name} needs the e.d. oracle; use graphs with n <= {BRUTE_FORCE_MAX_N}")
        if not has_efficient_dominating_set(g):
            return CheckResult(Verdict.NOT_APPLICABLE)
    if th.requires_prime and not is_prime(g):
        return CheckResult(Verdict.NOT_APPLICABLE)
    if not is_in_class(g, th.cls):
        return CheckResult(Verdict.NOT_APPLICABLE)
    witness = th.conclusion(g)
    if witness is None:
        return CheckResult(Verdict.PASS)
    assert th.validates(g, witness), f"{th.name}: witness does not re-validate"
    return CheckResult(Verdict.VIOLATION, witness)


# ------------------------------------------------------------------------ fuzzing


def witness_json(w: WitnessT | None):
    if w is None:
        return None
    if isinstance(w, Embedding):
        return {"pattern": w.pattern.value, "mapping": list(w.mapping)}
    if isinstance(w, Hole):
        return {"hole": list(w.cycle)}
    return {"atom": list(w.atom), "vertex": w.vertex, "cycle": list(w.cycle)}


@dataclass(frozen=True)
class Trial:
    index: int
    n: int
    graph: Graph | None
    verdict: Verdict
    witness: WitnessT | None = None

    def log_line(self, theorem: str, seed: int) -> str:
        record = {"theorem": theorem, "seed": seed, "trial": self.index, "n": self.n,
                  "verdict": self.verdict.value}
        if self.witness is not None:
            record["witness"] = witness_json(self.witness)
            record["edges"] = [list(e) for e in self.graph.edges()]
        return json.dumps(record, sort_keys=True)


@dataclass
class FuzzReport:
    theorem: str
    seed: int
    trials_attempted: int = 0
    trials_qualified: int = 0
    violations: list[tuple[Graph, WitnessT]] = field(default_factory=list)
    complete: bool = True
    log: list[str] = field(default_factory=list)
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "PASS" if self.passed else "VIOLATION"
        lines = [
            f"theorem {self.theorem}",
            f"seed {self.seed}",
            f"attempted {self.trials_attempted}",
            f"qualified {self.trials_qualified}{'' if self.complete else ' (incomplete: attempt budget exhausted)'}",
            f"violations {len(self.violations)}",
        ]
        for g, w in self.violations[:5]:
            lines.append(f"  n={g.n} edges={g.edges()} witness={json.dumps(witness_json(w))}")
        lines.append(status)
        return "\n".join(lines)


P_RANGE = (0.15, 0.85)


def trial_params(seed: int, index: int, min_n: int, max_n: int) -> tuple[int, float]:
    rng = make_rng(seed, 2 * index)
    return int(rng.integers(min_n, max_n + 1)), float(rng.uniform(*P_RANGE))


def run_trial(theorem_name: str, seed: int, index: int, min_n: int, max_n: int) -> Trial:
    """One draw: sample parameters and a class member from stream ``2*index+1``, then check."""
    th = THEOREMS[theorem_name]
    n, p = trial_params(seed, index, min_n, max_n)
    drawn = random_in_class(GenConfig(n, p, th.cls, require_ed=th.requires_ed, seed=seed,
                                      stream=2 * index + 1, max_attempts=1))
    if drawn is None:
        return Trial(index, n, None, Verdict.NOT_APPLICABLE)
    g = drawn[0]
    res = check_theorem(th, g)
    return Trial(index, n, g, res.verdict, res.witness)


def iter_trials(theorem_name: str, seed: int, min_n: int, max_n: int, limit: int,
                jobs: int = 1) -> Iterator[Trial]:
    """Trials ``0..limit-1`` in index order, computed serially or on ``jobs`` processes."""
    if jobs <= 1:
        for i in range(limit):
            yield run_trial(theorem_name, seed, i, min_n, max_n)
        return
    chunk = 8 * jobs
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for start in range(0, limit, chunk):
            idx = range(start, min(start + chunk, limit))
            k = len(idx)
            yield from pool.map(run_trial, [theorem_name] * k, [seed] * k, idx, [min_n] * k, [max_n] * k)


def fuzz(
    t: Union[Theorem, TheoremId, str],
    count: int,
    max_n: int,
    seed: int,
    *,
    min_n: int = 4,
    attempt_budget: int | None = None,
    jobs: int = 1,
) -> FuzzReport:
    """Check ``t`` on ``count`` qualified random graphs with ``min_n <= n <= max_n``.

    Trial ``i`` draws from Philox streams ``2i`` and ``2i+1`` of ``seed``, so
    the report does not depend on ``jobs``. Draws failing the precondition
    count as attempts only. If ``attempt_budget`` (default ``200 * count``)
    runs out first the report is marked incomplete.
    """
    th = get_theorem(t)
    if th.name not in THEOREMS:
        raise ValueError("fuzz only runs registered theorems")
    if th.requires_ed and max_n > BRUTE_FORCE_MAX_N:
        raise CapExceeded(f"{th.name} needs the e.d. oracle; use --max-n <= {BRUTE_FORCE_MAX_N}")
    min_n = min(min_n, max_n)
    budget = 200 * count if attempt_budget is None else attempt_budget
    report = FuzzReport(th.name, seed)
    started = time.perf_counter()
    for trial in iter_trials(th.name, seed, min_n, max_n, budget, jobs):
        report.trials_attempted += 1
        report.log.append(trial.log_line(th.name, seed))
        if trial.verdict is Verdict.NOT_APPLICABLE:
            continue
        report.trials_qualified += 1
        if trial.verdict is Verdict.VIOLATION:
            assert th.validates(trial.graph, trial.witness)
            report.violations.append((trial.graph, trial.witness))
        if report.trials_qualified >= count:
            break
    report.complete = report.trials_qualified >= count
    report.elapsed = time.perf_counter() - started
    return report


def corpus(t: Union[Theorem, TheoremId, str], count: int, max_n: int, seed: int,
           min_n: int = 4, attempt_budget: int | None = None) -> Iterator[Graph]:
    """The qualified graphs :func:`fuzz` would test, in the same order."""
    th = get_theorem(t)
    budget = 200 * count if attempt_budget is None else attempt_budget
    found = 0
    for trial in iter_trials(th.name, seed, min(min_n, max_n), max_n, budget):
        if trial.verdict is not Verdict.NOT_APPLICABLE:
            found += 1
            yield trial.graph
            if found >= count:
                return
