"""``perfcode`` command line.

Exit status: 0 success or pass, 1 semantic negative (no e.d., non-member,
violation found), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from perfcode import __version__
from perfcode.decompose import atoms
from perfcode.errors import CapExceeded, ClassViolation, GraphError, NotChordalError, StructureViolation, UnsupportedError
from perfcode.gen import GENERATOR_ID, GenConfig, make_rng, random_graph, random_in_class, random_weights
from perfcode.graph import WeightedGraph, chordality, connected_components, distance, square
from perfcode.io import format_graph, read_graph
from perfcode.mwis import mwis_chordal, mwis_exact, mwis_hole_banner_free, mwis_nearly_chordal
from perfcode.patterns import class_violation, parse_class
from perfcode.verify import THEOREMS, fuzz, get_theorem, witness_json
from perfcode.wed import Objective, Strategy, brute_force_eds, solve_wed

OK, NEGATIVE, USAGE = 0, 1, 2


def _set(vs) -> str:
    return "{" + ",".join(map(str, vs)) + "}"


class _Out:
    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream

    def emit(self, human: str, **record):
        if self.fmt == "jsonl":
            print(json.dumps(record, sort_keys=True), file=self.stream)
        else:
            print(human, file=self.stream)


# ---------------------------------------------------------------- subcommands


def cmd_square(args, out: _Out) -> int:
    wg = read_graph(args.file)
    sq = square(wg.graph)
    if out.fmt == "jsonl":
        out.emit("", n=sq.n, edges=[list(e) for e in sq.edges()])
    else:
        out.stream.write(format_graph(WeightedGraph(sq, wg.weights)))
    return OK


def cmd_distance(args, out: _Out) -> int:
    g = read_graph(args.file).graph
    for v in (args.u, args.v):
        g.check_vertex(v)
    d = distance(g, args.u, args.v)
    shown = "inf" if d == float("inf") else str(int(d))
    out.emit(f"distance {args.u} {args.v} {shown}", u=args.u, v=args.v, distance=shown)
    return OK


def cmd_recognize(args, out: _Out) -> int:
    g = read_graph(args.file).graph
    if args.cls == "chordal":
        res = chordality(g)
        if res.is_chordal:
            out.emit("member", member=True, peo=list(res.peo))
            return OK
        out.emit(f"non-member cycle {_set(res.cycle)}", member=False, witness={"cycle": list(res.cycle)})
        return NEGATIVE
    cls = parse_class(args.cls)
    w = class_violation(g, cls)
    if w is None:
        out.emit("member", member=True)
        return OK
    rec = witness_json(w)
    out.emit(f"non-member {json.dumps(rec, sort_keys=True)}", member=False, witness=rec)
    return NEGATIVE


_MWIS_SOLVERS = {
    "exact": lambda wg: mwis_exact(wg, cap=None),
    "chordal": mwis_chordal,
    "nearly-chordal": mwis_nearly_chordal,
    "hole-banner-free": mwis_hole_banner_free,
}


def cmd_mwis(args, out: _Out) -> int:
    wg = read_graph(args.file)
    try:
        sol = _MWIS_SOLVERS[args.solver](wg)
    except NotChordalError as exc:
        out.emit(f"not applicable: {exc} cycle {_set(exc.cycle)}", error=str(exc), cycle=list(exc.cycle))
        return NEGATIVE
    except StructureViolation as exc:
        out.emit(f"not applicable: {exc}", error=str(exc), vertex=exc.vertex, cycle=list(exc.cycle))
        return NEGATIVE
    out.emit(f"MWIS {_set(sol.vertices)} weight {sol.total_weight}",
             vertices=list(sol.vertices), weight=sol.total_weight)
    return OK


def cmd_wed(args, out: _Out) -> int:
    wg = read_graph(args.file)
    try:
        sol = solve_wed(wg, Objective(args.objective), Strategy(args.strategy), check_class=args.check_class)
    except ClassViolation as exc:
        out.emit(f"class violation: {exc} witness {json.dumps(witness_json(exc.witness), sort_keys=True)}",
                 error=str(exc), witness=witness_json(exc.witness))
        return NEGATIVE
    if sol is None:
        out.emit("no efficient dominating set", exists=False)
        return NEGATIVE
    out.emit(f"ED {_set(sol.vertices)} weight {sol.total_weight}",
             exists=True, vertices=list(sol.vertices), weight=sol.total_weight)
    return OK


def cmd_ed_list(args, out: _Out) -> int:
    wg = read_graph(args.file)
    eds = brute_force_eds(wg.graph)
    for d in eds:
        out.emit(f"ED {_set(d)} weight {wg.weight_of(d)}", vertices=list(d), weight=wg.weight_of(d))
    if not eds:
        out.emit("no efficient dominating set", exists=False)
        return NEGATIVE
    return OK


def cmd_atoms(args, out: _Out) -> int:
    g = read_graph(args.file).graph
    for comp in connected_components(g):
        mask = sum(1 << v for v in comp)
        tree = atoms(g, mask)
        for sep in tree.separators:
            out.emit(f"separator {_set(sep)}", separator=list(sep))
        for atom in tree.atoms:
            out.emit(f"atom {_set(atom)}", atom=list(atom))
    return OK


def cmd_fuzz(args, out: _Out) -> int:
    report = fuzz(args.theorem, args.count, args.max_n, args.seed, jobs=args.jobs)
    if out.fmt == "jsonl":
        for line in report.log:
            print(line, file=out.stream)
        out.emit("", theorem=report.theorem, seed=report.seed, attempted=report.trials_attempted,
                 qualified=report.trials_qualified, violations=len(report.violations), complete=report.complete)
    else:
        print(report.summary(), file=out.stream)
    if args.verbose:
        print(f"elapsed {report.elapsed:.3f}s", file=sys.stderr)
    return OK if report.passed else NEGATIVE


def cmd_gen(args, out: _Out) -> int:
    lo, hi = args.weights
    if args.cls is None:
        if args.require_ed:
            raise argparse.ArgumentTypeError("--require-ed needs --class")
        g = random_graph(GenConfig(args.n, args.p, seed=args.seed))
        wg = WeightedGraph(g, random_weights(args.n, (lo, hi), make_rng(args.seed, 1)))
    else:
        cfg = GenConfig(args.n, args.p, parse_class(args.cls), args.require_ed, args.seed,
                        max_attempts=args.attempts, weight_range=(lo, hi))
        drawn = random_in_class(cfg)
        if drawn is None:
            print("no graph found within the attempt budget", file=sys.stderr)
            return NEGATIVE
        wg = WeightedGraph(*drawn)
    out.stream.write(f"# generator {GENERATOR_ID} seed {args.seed}\n" + format_graph(wg))
    return OK


# ------------------------------------------------------------------- parsing


def _weight_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected LO:HI") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("empty weight range")
    return lo, hi


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="perfcode", description="Efficient domination and MWIS on graph squares.")
    parser.add_argument("--version", action="version", version=f"perfcode {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "jsonl"), default="human")
    common.add_argument("-v", "--verbose", action="store_true", help="timing on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("square", parents=[common], help="print the square graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_square)

    p = sub.add_parser("distance", parents=[common], help="shortest-path distance")
    p.add_argument("file")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("recognize", parents=[common], help="class membership with a witness")
    p.add_argument("file")
    p.add_argument("--class", dest="cls", required=True,
                   help="p6-bull-free, p6-s113-free, hole-banner-free, chordal, or a list like P5,hole")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("mwis", parents=[common], help="maximum weight independent set")
    p.add_argument("file")
    p.add_argument("--solver", choices=sorted(_MWIS_SOLVERS), default="exact")
    p.set_defaults(func=cmd_mwis)

    p = sub.add_parser("wed", parents=[common], help="optimal efficient dominating set")
    p.add_argument("file")
    obj = p.add_mutually_exclusive_group()
    obj.add_argument("--min", dest="objective", action="store_const", const="min")
    obj.add_argument("--max", dest="objective", action="store_const", const="max")
    obj.add_argument("--exists", dest="objective", action="store_const", const="exists")
    p.set_defaults(objective="min")
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="auto")
    p.add_argument("--check-class", action="store_true")
    p.set_defaults(func=cmd_wed)

    p = sub.add_parser("ed-list", parents=[common], help="all efficient dominating sets (n <= 20)")
    p.add_argument("file")
    p.set_defaults(func=cmd_ed_list)

    p = sub.add_parser("atoms", parents=[common], help="clique-separator decomposition")
    p.add_argument("file")
    p.set_defaults(func=cmd_atoms)

    p = sub.add_parser("fuzz", parents=[common], help="fuzz a structural statement")
    p.add_argument("--theorem", required=True, help=", ".join(THEOREMS) + " (or thm2, thm5i, ..., lemma-k23)")
    p.add_argument("--count", type=_positive, default=100)
    p.add_argument("--max-n", type=_positive, default=12)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("gen", parents=[common], help="generate a graph file")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--class", dest="cls")
    p.add_argument("--require-ed", action="store_true")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--attempts", type=_positive, default=100)
    p.add_argument("--weights", type=_weight_range, default=(1, 1), help="LO:HI")
    p.set_defaults(func=cmd_gen)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    if args.command == "fuzz":
        try:
            get_theorem(args.theorem)
        except ValueError as exc:
            print(f"perfcode: error: {exc}", file=sys.stderr)
            return USAGE
    try:
        return args.func(args, _Out(args.format, stdout))
    except (GraphError, CapExceeded, UnsupportedError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"perfcode: error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
