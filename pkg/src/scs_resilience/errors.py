"""Exception hierarchy.

Everything raised on purpose by this package derives from ``SCSError``.
``ValidationError`` covers bad or inconsistent input. Search and simulation
limits raise ``LimitExceeded`` subclasses, which the CLI maps to exit code 2.
"""


class SCSError(Exception):
    """Base class for all package errors."""


class ValidationError(SCSError, ValueError):
    """Semantically invalid input (geometry, graph, schedule...)."""


class ParseError(SCSError, ValueError):
    """Malformed document or text."""


class InvalidParams(ValidationError):
    pass


class OverlappingCircles(ValidationError):
    def __init__(self, i, j, distance):
        super().__init__(f"circles {i} and {j} overlap or touch (center distance {distance:.6g} <= 2)")
        self.pair = (i, j)
        self.distance = distance


class EdgeOutOfRange(ValidationError):
    pass


class DisconnectedGraph(ValidationError):
    pass


class UnknownEdge(SCSError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown edge"


class NotBipartite(ValidationError):
    def __init__(self, cycle):
        super().__init__(f"communication graph is not bipartite; odd cycle {list(cycle)}")
        self.cycle = tuple(cycle)


class NotSynchronizable(ValidationError):
    def __init__(self, edge, message=None):
        super().__init__(message or f"edge {tuple(edge)} fails the synchronization check")
        self.edge = tuple(edge)


class NonIntegralRingLength(ValidationError):
    pass


class NonIntegralTieLength(ValidationError):
    pass


class NonIntegralOffset(ValidationError):
    pass


class PlacementSpacingViolation(ValidationError):
    pass


class DirectionNotOnRing(SCSError, ValueError):
    pass


class NotATree(ValidationError):
    pass


class ReductionMismatch(SCSError):
    def __init__(self, message, expected=None, actual=None):
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class LayoutCollision(ValidationError):
    pass


class InsufficientHorizon(SCSError, ValueError):
    pass


class LimitExceeded(SCSError):
    """A configured search or simulation cap was hit."""


class BudgetExceeded(LimitExceeded):
    pass


class EventCapExceeded(LimitExceeded):
    pass


class HorizonOverflow(LimitExceeded):
    pass
