"""Exception types shared across the package."""


class PennerError(Exception):
    """Base class for all library errors."""


class NoRealRootError(PennerError):
    """Root isolation found no real root."""


class NoRealSolutionError(PennerError):
    """x + 1/x = s has no real solution for s < 2."""


class NotNonnegativeError(PennerError):
    """A matrix required to be entrywise nonnegative has a negative entry."""


class NotBipartiteError(PennerError):
    """A bipartite graph was required."""


class NotAffineError(PennerError):
    """An affine diagram with alternating signs was required."""


class InvalidWordError(PennerError):
    """A twist word failed validation; see the attached report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidMapError(PennerError):
    """Rotation data does not define a closed oriented combinatorial map."""


class InvalidParameterError(PennerError, ValueError):
    """An argument is outside its documented range."""


class InvalidGenusError(InvalidParameterError):
    """Genus must be a positive integer."""


class TooLargeError(PennerError):
    """The requested exhaustive computation exceeds the configured size cap."""


class InternalInconsistencyError(PennerError):
    """Two independent computations of the same quantity disagree."""


class UnclassifiedSurvivorError(InternalInconsistencyError):
    """A pruned graph matched no known family; indicates a bug, not new math."""


class DocumentError(PennerError, ValueError):
    """A pattern or graph document is malformed."""
