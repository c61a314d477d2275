"""Exception types shared across the package."""


class GraphError(ValueError):
    """Invalid graph data: bad index, self-loop, duplicate edge, bad weight."""


class NotChordalError(ValueError):
    """Raised by solvers that need a chordal input. Carries a chordless cycle
    and, for the nearly-chordal solver, the vertex whose anti-neighbourhood
    contains it."""

    def __init__(self, message, cycle, vertex=None):
        super().__init__(message)
        self.cycle = tuple(cycle)
        self.vertex = vertex


class StructureViolation(RuntimeError):
    """An atom of the decomposition was not nearly chordal.

    ``vertex`` is the vertex whose anti-neighbourhood is not chordal and
    ``cycle`` a chordless cycle (>= 4) in it, both in original labels.
    """

    def __init__(self, message, atom, vertex, cycle):
        super().__init__(message)
        self.atom = tuple(atom)
        self.vertex = vertex
        self.cycle = tuple(cycle)


class ClassViolation(ValueError):
    """Input graph is outside the class a strategy requires."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class CapExceeded(ValueError):
    """Input is larger than an exhaustive routine is willing to handle."""


class UnsupportedError(ValueError):
    """Requested query has no exact implementation at this size."""
