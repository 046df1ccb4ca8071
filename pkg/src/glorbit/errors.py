"""Exception hierarchy.

Every domain failure derives from :class:`OrbitError` and carries a short
machine-readable ``reason`` (the class name), which the CLI reports verbatim.
"""


class OrbitError(Exception):
    @property
    def reason(self) -> str:
        return type(self).__name__


class ShapeError(OrbitError, ValueError):
    pass


class NotUnimodular(OrbitError, ValueError):
    pass


class NotSaturated(OrbitError):
    """The given rows do not extend to a basis of Z^m."""


class EmptySubspace(OrbitError):
    pass


class DegenerateSimplex(OrbitError, ValueError):
    pass


class InvalidComplex(OrbitError, ValueError):
    pass


class NotRegular(OrbitError):
    def __init__(self, message, simplex=None):
        super().__init__(message)
        self.simplex = simplex


class UnsupportedDimension(OrbitError):
    pass


class UnsupportedSize(OrbitError):
    pass


class NotEquivalent(OrbitError):
    pass


class CannotFixSign(OrbitError):
    pass


class BasisMismatch(OrbitError):
    pass


class DenominatorMismatch(OrbitError):
    pass


class NotDense(OrbitError):
    pass


class PrecisionExhausted(OrbitError):
    """An interval comparison could not be decided at the maximum precision."""
