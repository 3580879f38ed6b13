"""Exception types raised by the library."""


class SasakiAreaError(Exception):
    """Base class for all library errors."""


class DegenerateAnnulus(SasakiAreaError, ValueError):
    pass


class OutOfDomain(SasakiAreaError, ValueError):
    pass


class OutsideAnnulus(OutOfDomain):
    """Latitude beyond the annulus, where the bound's radicand turns negative."""


class BoundarySingularity(SasakiAreaError, ValueError):
    """The minimizer slope diverges at the annulus boundary."""


class NonIntegralWinding(SasakiAreaError, ArithmeticError):
    pass


class IdentityViolation(SasakiAreaError, ArithmeticError):
    """Curvature form and derivative form of the area integrand disagree."""


class QuadratureFailure(SasakiAreaError, ArithmeticError):
    pass


class SingularIntegrand(QuadratureFailure):
    pass


class ExcludedIndex(SasakiAreaError, ValueError):
    """Index classes 0 and 2 have a degenerate ellipse and no bound."""


class NotConverged(SasakiAreaError, RuntimeError):
    pass


class GridFormatError(SasakiAreaError, ValueError):
    pass

__all__ = [
    "SasakiAreaError",
    "DegenerateAnnulus",
    "OutOfDomain",
    "OutsideAnnulus",
    "BoundarySingularity",
    "NonIntegralWinding",
    "IdentityViolation",
    "QuadratureFailure",
    "SingularIntegrand",
    "ExcludedIndex",
    "NotConverged",
    "GridFormatError",
]
