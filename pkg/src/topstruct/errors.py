"""Exception types shared across the package."""


class TopstructError(Exception):
    """Base class for all package errors."""


class BudgetExceeded(TopstructError):
    """A configured work limit was hit before the search finished.

    Exact searches never degrade silently: running out of budget is an
    explicit error, not a "no" answer.
    """

    def __init__(self, message="work budget exhausted", spent=None):
        super().__init__(message)
        self.spent = spent


class AdjacentPair(TopstructError):
    """Minimum vertex cut requested for an adjacent pair (undefined)."""


class NotAnEdge(TopstructError):
    """The given pair is not an edge of the decomposition tree."""


class NotASubtree(TopstructError):
    """The given node set does not induce a connected subtree."""


class InconsistentOrientation(TopstructError):
    """An orientation did not direct all tree edges towards a unique node."""


class SeparationDoesNotDecide(TopstructError):
    """A lazy orientation was queried with a separation it cannot orient."""


class NotAViolation(TopstructError):
    """The improvement step was handed something that is not a genuine
    leanness violation for the given decomposition."""


class Indistinguishable(TopstructError):
    """Two orientations agree on every separation of order below the bound."""


class OrientationMismatch(TopstructError):
    """Subdivision extraction requires the block and the model to induce
    the same orientation; they do not."""


class CoverageImpossible(TopstructError):
    """Some block/model pair has no efficiently distinguishing tree edge.

    This signals a broken lean decomposition upstream, never a property
    of the input graph.
    """


class BichromaticComponent(TopstructError):
    """A component of T - F contains both a block home node and a model
    home node; the pipeline should have exited with a subdivision."""


class UncoloredComponent(TopstructError):
    """A component of T - F contains neither kind of home node and the
    caller did not allow the blue default."""


class PreconditionFailed(TopstructError):
    """An operation's stated precondition does not hold."""


class InvariantViolation(TopstructError):
    """An internal certainty failed; indicates a bug, not bad input."""


class FormatError(TopstructError):
    """Malformed .gr/.td input."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line
