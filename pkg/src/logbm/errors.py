"""Exception types raised by the geometry engine."""


class GeometryError(ValueError):
    """Base class for all engine errors."""


class DegenerateBody(GeometryError):
    """Body is flat, empty, or does not contain the origin in its interior."""


class NonPositiveFunction(GeometryError):
    """A function that must be positive on the sphere is not."""


class DegenerateHull(GeometryError):
    """Convex hull of the dual point set is lower dimensional."""


class ResolutionOutOfRange(GeometryError):
    """Requested grid subdivision level is outside the supported range."""


class InvalidExponent(GeometryError):
    """Exponent p outside the admissible interval."""


class InvalidParameter(GeometryError):
    """Scalar parameter violates its precondition."""


class InvalidInput(GeometryError):
    """Inputs are inconsistent with each other."""
