"""Text format for weighted graphs.

::

    # comment lines may appear anywhere
    p ewd <n> <m>
    v <index> <weight>      (optional, at most one per vertex, default weight 1)
    e <u> <v>               (exactly m lines, u < v, no duplicates)

Vertices are 0-indexed. ``v`` lines must precede ``e`` lines.
"""

from __future__ import annotations

from pathlib import Path

from perfcode.errors import GraphError
from perfcode.graph import WEIGHT_LIMIT, Graph, WeightedGraph


class GraphFileError(GraphError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _ints(fields, count, lineno, source):
    if len(fields) != count:
        raise GraphFileError(f"expected {count} fields after {fields and fields[0]!r}", lineno, source)
    try:
        return [int(x) for x in fields[1:]]
    except ValueError:
        raise GraphFileError("non-integer field", lineno, source) from None


def parse_graph(text: str, source: str = "<input>") -> WeightedGraph:
    n = m = None
    weights: list[int] = []
    seen_v: set[int] = set()
    edges: list[tuple[int, int]] = []
    seen_e: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        tag = fields[0]
        if n is None:
            if tag != "p" or len(fields) < 2 or fields[1] != "ewd":
                raise GraphFileError("first line must be 'p ewd <n> <m>'", lineno, source)
            n, m = _ints(fields[1:], 3, lineno, source)
            if n < 0 or m < 0:
                raise GraphFileError("n and m must be non-negative", lineno, source)
            weights = [1] * n
        elif tag == "p":
            raise GraphFileError("duplicate problem line", lineno, source)
        elif tag == "v":
            if edges:
                raise GraphFileError("vertex lines must precede edge lines", lineno, source)
            i, w = _ints(fields, 3, lineno, source)
            if not 0 <= i < n:
                raise GraphFileError(f"vertex {i} out of range 0..{n - 1}", lineno, source)
            if i in seen_v:
                raise GraphFileError(f"duplicate weight for vertex {i}", lineno, source)
            if abs(w) > WEIGHT_LIMIT:
                raise GraphFileError(f"weight {w} exceeds 2^31 in magnitude", lineno, source)
            seen_v.add(i)
            weights[i] = w
        elif tag == "e":
            u, v = _ints(fields, 3, lineno, source)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFileError(f"edge ({u}, {v}) out of range", lineno, source)
            if u >= v:
                raise GraphFileError(f"edge ({u}, {v}) must have u < v", lineno, source)
            if (u, v) in seen_e:
                raise GraphFileError(f"duplicate edge ({u}, {v})", lineno, source)
            if len(edges) == m:
                raise GraphFileError(f"more than the declared {m} edges", lineno, source)
            seen_e.add((u, v))
            edges.append((u, v))
        else:
            raise GraphFileError(f"unknown line type {tag!r}", lineno, source)
    if n is None:
        raise GraphFileError("missing 'p ewd <n> <m>' line", None, source)
    if len(edges) != m:
        raise GraphFileError(f"declared {m} edges, found {len(edges)}", None, source)
    return WeightedGraph(Graph(n, edges), tuple(weights))


def format_graph(wg: WeightedGraph) -> str:
    g = wg.graph
    edges = g.edges()
    lines = [f"p ewd {g.n} {len(edges)}"]
    lines += [f"v {v} {w}" for v, w in enumerate(wg.weights)]
    lines += [f"e {u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> WeightedGraph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise GraphFileError(f"cannot read file: {exc.strerror}", None, str(path)) from None
    return parse_graph(text, str(path))


def write_graph(path: str | Path, wg: WeightedGraph) -> None:
    Path(path).write_text(format_graph(wg))
