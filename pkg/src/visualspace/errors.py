"""Exception types raised by the numerical routines."""


class VisualSpaceError(Exception):
    """Base class for numeric failures in this package."""


class QuadratureError(VisualSpaceError):
    pass


class CurvatureError(VisualSpaceError):
    pass


class GeodesicError(VisualSpaceError):
    pass


class IdealPointError(VisualSpaceError):
    """A point on or outside the basic circle has no half-plane image."""


class ConformalCheckError(VisualSpaceError):
    pass


class RootFindingError(VisualSpaceError):
    pass


class ProfileDomainError(VisualSpaceError):
    """A width profile was evaluated outside its declared domain."""


class OutputError(VisualSpaceError):
    pass
