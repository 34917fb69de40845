"""Exception hierarchy."""


class CoadjointError(Exception):
    """Base class for all domain errors raised by this package."""


class ProjectionOverflow(CoadjointError):
    """Truncating sampled data to the degree cap lost more than ``eps_proj``."""


class NewtonDivergence(CoadjointError):
    pass


class NotADiffeomorphism(CoadjointError):
    pass


class WeightMismatch(CoadjointError):
    pass


class UnsupportedCarrier(CoadjointError):
    """Operation is not defined for this kind of function (e.g. anti-periodic)."""


class NotSturmLiouville(CoadjointError):
    pass


class NotTangent(CoadjointError):
    """A commutator that should be a multiplication operator is not."""


class ActionMismatch(CoadjointError):
    """Two independent computations of the same action disagree."""


class StepCountTooSmall(CoadjointError):
    pass


class NotPeriodic(CoadjointError):
    pass


class SectorMismatch(CoadjointError):
    pass


class NonIntegerExponent(CoadjointError):
    pass


class ConfigError(CoadjointError):
    pass


class ParseError(CoadjointError):
    """CLI input could not be parsed into the expected JSON structure."""
