"""Exception types raised across the package."""


class DeceptionError(Exception):
    """Base class for all errors raised by this package."""


class UnknownNode(DeceptionError):
    pass


class SelfLoop(DeceptionError):
    pass


class EdgeAlreadyPresent(DeceptionError):
    pass


class EdgeAbsent(DeceptionError):
    pass


class NotAMember(DeceptionError):
    """Node is not part of the target community."""


class NotAPartition(DeceptionError):
    """Community sets overlap, are empty, or do not cover all nodes."""


class UnknownCommunity(DeceptionError):
    pass


class EmptyGraph(DeceptionError):
    pass


class EmptyEdgeSet(DeceptionError):
    """Modularity is undefined on a graph with no edges."""


class DegenerateEdgeCount(DeceptionError):
    """Deletion loss rules divide by (m - 1); they need m >= 2."""


class DegenerateDegree(DeceptionError):
    """Safeness deletion rules divide by deg(deg - 1); they need deg >= 2."""


class IllegalUpdate(DeceptionError):
    """Update does not touch the target community."""


class TargetTooSmall(DeceptionError):
    """Target communities need at least two members."""


class NoEligibleCommunity(DeceptionError):
    pass


class NoCandidateDeletion(DeceptionError):
    """No deletable edge qualifies; caller should fall back to an addition."""


class NoCandidateAddition(DeceptionError):
    """No addable edge qualifies; caller should fall back to a deletion."""


class Exhausted(DeceptionError):
    """Neither an addition nor a deletion candidate exists."""


class ParseError(DeceptionError):
    pass


class DanglingEdge(ParseError):
    """GML edge references a node id that was never declared."""


class InvalidParams(DeceptionError):
    pass


class EmptyInput(DeceptionError):
    pass
