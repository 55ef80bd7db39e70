"""Exception hierarchy shared by every module."""


class BohrLabError(Exception):
    """Base class for all library errors."""


class DomainError(BohrLabError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ParamError(BohrLabError, ValueError):
    """Class parameters violate the applicability rules of a theorem."""


class FormatError(BohrLabError, ValueError):
    """A coefficient file does not match the documented JSON layout."""


class EmptySeries(BohrLabError, ValueError):
    pass


class ZeroConstantTerm(BohrLabError, ZeroDivisionError):
    pass


class SpecMismatch(BohrLabError, ValueError):
    """Series shape (p, m, k0, normalization) contradicts the requested class."""


class NoRootFound(BohrLabError, ArithmeticError):
    pass


class NotSharp(BohrLabError):
    """No extremal witness is claimed for the class."""


class WitnessInadmissible(DomainError):
    """The extremal parameter computed at the radius falls outside [0, 1]."""


class AllSamplesDegenerate(BohrLabError, ArithmeticError):
    pass
