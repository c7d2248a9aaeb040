"""Exception hierarchy.

Everything derives from :class:`ExcessKitError` so callers can catch the
library wholesale.  Most classes also derive from :class:`ValueError`,
which is what the surrounding scientific-python ecosystem expects for
bad inputs.
"""


class ExcessKitError(Exception):
    """Base class for all errors raised by excesskit."""


class NonRectangularError(ExcessKitError, ValueError):
    """Coordinate table rows have unequal lengths."""


class ZeroRowError(ExcessKitError, ValueError):
    """Normalization requested for a zero vector."""


class RadiusViolationError(ExcessKitError, ValueError):
    """A point is off the sphere of squared radius m (and normalize is off)."""


class DuplicatePointError(ExcessKitError, ValueError):
    """Two points coincide (inner product reaches the squared radius)."""


class AmbiguousClusteringError(ExcessKitError, ValueError):
    """Two inner-product clusters are too close for the configured tolerance."""


class UnknownValueError(ExcessKitError, KeyError):
    """Requested value is not in the inner-product profile."""


class DegenerateMeasureError(ExcessKitError, ArithmeticError):
    """Discrete measure cannot support the requested orthogonal polynomials."""


class RankAmbiguityError(ExcessKitError, ArithmeticError):
    """A singular value sits inside the rank-decision band; refusing to guess."""


class NotATwoDesignError(ExcessKitError, ValueError):
    """Operation requires a verified spherical 2-design."""


class HypothesisViolatedError(ExcessKitError, ValueError):
    """Certificate requested outside the degree hypothesis S = s."""


class InconsistentInputsError(ExcessKitError, ValueError):
    """Pipeline stages disagree on dimensions."""


class NotAPartitionError(ExcessKitError, ValueError):
    """Relation input is not a partition of X x X with diagonal class 0."""


class EigenspaceAmbiguityError(ExcessKitError, ArithmeticError):
    """Common eigenspaces of the relation matrices cannot be resolved."""


class RankDeficientError(ExcessKitError, ValueError):
    """Idempotent has too small a rank to embed to a valid point set."""


class DisconnectedGraphError(ExcessKitError, ValueError):
    """Graph operation requires a connected graph."""


class NotRegularError(ExcessKitError, ValueError):
    """Graph operation requires a regular graph."""
