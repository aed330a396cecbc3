"""Exception types. Every error carries a stable machine-readable ``code``."""


class TopologyError(Exception):
    code = "topology-error"


class DuplicateVertexInFacet(TopologyError):
    code = "duplicate-vertex-in-facet"


class SimplexNotInComplex(TopologyError):
    code = "simplex-not-in-complex"


class DimensionTooHigh(TopologyError):
    code = "dimension-too-high"


class NonSimplicialQuotient(TopologyError):
    code = "non-simplicial-quotient"

    def __init__(self, message, simplices=()):
        super().__init__(message)
        self.simplices = tuple(simplices)


class ApexCollision(TopologyError):
    code = "apex-collision"


class InvalidParameter(TopologyError):
    code = "invalid-parameter"


class NotAFreeFace(TopologyError):
    code = "not-a-free-face"


class StarTooLarge(TopologyError):
    code = "star-too-large"


class NotSimplicial(TopologyError):
    code = "not-simplicial"


class NotConnected(TopologyError):
    code = "not-connected"


class InvalidSequence(TopologyError):
    code = "invalid-sequence"


class TerminalNotAPoint(TopologyError):
    code = "terminal-not-a-point"


class PointNotInComplex(TopologyError):
    code = "point-not-in-complex"


class UnsortedTimes(TopologyError):
    code = "unsorted-times"


class StageOutOfRange(TopologyError):
    code = "stage-out-of-range"


class ParseError(TopologyError):
    code = "parse-error"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownCommand(TopologyError):
    code = "unknown-command"
