"""Exception hierarchy.

Everything the CLI maps to exit code 2 derives from :class:`InvalidInput`;
everything it maps to exit code 3 derives from :class:`InternalInconsistency`.
"""


class TorricelliError(Exception):
    exit_code = 1


class InvalidInput(TorricelliError, ValueError):
    exit_code = 2


class CollinearAnchors(InvalidInput):
    pass


class DegenerateTetrahedron(InvalidInput):
    pass


class TargetNotInterior(InvalidInput):
    pass


class CandidateAtAnchor(InvalidInput):
    pass


class MalformedInstance(InvalidInput):
    pass


class InternalInconsistency(TorricelliError, ArithmeticError):
    exit_code = 3


class NonTriangularWeights(InternalInconsistency):
    """Weights fail their own triangle inequality although the interior
    regime was asserted."""


class MaxIterationsExceeded(TorricelliError):
    exit_code = 3

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
