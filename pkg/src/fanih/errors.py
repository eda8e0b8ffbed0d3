"""Exception hierarchy shared by all modules."""


class FanihError(Exception):
    """Base class; carries an optional JSON-friendly witness."""

    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class FanError(FanihError):
    pass


class BadRay(FanError):
    pass


class NotPointed(FanError):
    pass


class NotAFan(FanError):
    pass


class UnknownCone(FanError):
    pass


class NotCoveringPair(FanError):
    pass


class NotASubdivision(FanError):
    pass


class DimensionTooSmall(FanError):
    pass


class DegeneratePolytope(FanError):
    pass


class CapTooSmall(FanihError):
    pass


class NotInCategory(FanihError):
    pass


class NegativeMultiplicity(FanihError):
    pass


class NotStrictlyConvex(FanihError):
    pass


class SignInconsistency(FanihError):
    pass


class CheckFailed(FanihError):
    pass
