"""Exception hierarchy.

Every error carries a short machine-readable ``kind`` string; the command
line front end prints it as ``ERROR:<kind>: <message>`` and exits nonzero.
"""

from __future__ import annotations


class TropicalError(Exception):
    """Base class for all library errors."""

    kind = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class DimensionError(TropicalError):
    """Shapes do not match the operation (non-square, length mismatch, ...)."""

    kind = "dimension"


class BottomEntryError(TropicalError):
    """A Bottom entry appeared where only finite values are allowed."""

    kind = "bottom"


class FormatError(TropicalError):
    """Malformed matrix file or scalar token."""

    kind = "format"


class DomainError(TropicalError):
    """A precondition on the operation's domain was violated."""

    kind = "domain"


class NegativeCycleError(TropicalError):
    """The weighted digraph has a cycle of negative total weight."""

    kind = "negative-cycle"

    def __init__(self, cycle, weight):
        self.cycle = tuple(cycle)
        self.weight = weight
        path = "->".join(str(n) for n in (*self.cycle, self.cycle[0]))
        super().__init__(f"negative cycle {path} of weight {weight}")


class UnboundedPolytopeError(TropicalError):
    """The weighted digraph polyhedron is unbounded modulo the all-ones line."""

    kind = "unbounded"


class NotSignGenericError(TropicalError):
    """Two optimal permutations of opposite parity exist in some submatrix."""

    kind = "not-sign-generic"

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ParityUnknownError(TropicalError):
    """Parity analysis was capped before reaching a verdict."""

    kind = "parity-unknown"

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class DegenerateHullError(TropicalError):
    """The lifted point configuration has zero volume at every parameter."""

    kind = "degenerate-hull"


class SamplerLimitError(TropicalError):
    """Rejection sampling exceeded its attempt budget."""

    kind = "sampler-limit"
