"""Exception types raised across the package."""


class HoferError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(HoferError, ValueError):
    pass


class DimensionTooLarge(HoferError, ValueError):
    pass


class MalformedInput(HoferError, ValueError):
    """Input violates a structural invariant (shape, trace, skewness, sum-zero)."""


class NotDominant(HoferError, ValueError):
    pass


class NotCommuting(HoferError):
    """A family expected to commute does not.

    ``pair`` holds the indices of the worst offending pair and ``bracket``
    its bracket norm.
    """

    def __init__(self, message, pair=None, bracket=None):
        super().__init__(message)
        self.pair = pair
        self.bracket = bracket


class BoundaryOfInjectivity(HoferError):
    """The principal logarithm is not reliably inside the spectral ball."""


class StepTooLarge(HoferError):
    pass


class EigenSolverError(HoferError):
    pass


class DegenerateInput(HoferError, ValueError):
    pass


class OriginNotInterior(HoferError):
    pass


class ZeroDirection(HoferError, ValueError):
    pass


class ZeroVector(HoferError, ValueError):
    pass


class NotAVertex(HoferError, ValueError):
    pass


class EmptyPolytope(HoferError):
    pass


class NotFull(HoferError):
    """The orbit family does not span the sum-zero hyperplane."""


class Unbounded(HoferError):
    pass
