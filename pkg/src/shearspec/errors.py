"""Exception hierarchy shared by all modules."""


class ShearSpecError(Exception):
    pass


class DomainError(ShearSpecError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Gamma function evaluated at a non-positive integer."""


class RangeError(ShearSpecError, ArithmeticError):
    """Argument outside the declared evaluation range, or result overflows."""


class ConvergenceError(ShearSpecError, ArithmeticError):
    pass


class QuadratureError(ConvergenceError):
    pass


class BracketError(ShearSpecError, RuntimeError):
    """Not enough sign changes found to bracket the requested roots."""


class MatchingError(ShearSpecError, ArithmeticError):
    """Matching ratio at x = 0 blows up."""


class ResolutionError(ShearSpecError, RuntimeError):
    """Two nodes closer than the node-resolution limit."""


class NormalizationError(ShearSpecError, ValueError):
    pass
