"""Exception hierarchy shared by every module of the package."""


class QHeunError(Exception):
    """Base class for all errors raised by this package."""


class ZeroScale(QHeunError, ValueError):
    pass


class ZeroMultiplier(QHeunError, ValueError):
    pass


class NegativeExponent(QHeunError, ValueError):
    pass


class BaseMismatch(QHeunError, ValueError):
    pass


class NonPolynomialResult(QHeunError, ArithmeticError):
    """An operator applied to a polynomial left a genuine denominator."""

    def __init__(self, value, message=None):
        self.value = value
        super().__init__(message or f"result is not a Laurent polynomial: {value}")


class DegenerateSpectrum(QHeunError, ArithmeticError):
    pass


class FitFailure(QHeunError, ArithmeticError):
    pass


class SingularParameters(QHeunError, ArithmeticError):
    pass


class NotHeunShape(QHeunError, ValueError):
    pass


class ExpansionFailure(QHeunError, ArithmeticError):
    pass


class BoundaryLeak(QHeunError, ValueError):
    pass


class NoRationalScale(QHeunError, ArithmeticError):
    pass


class InconsistentFit(QHeunError, ArithmeticError):
    """Coefficient matching has no solution.

    ``subsystem`` holds the (row, rhs) pairs of a minimal infeasible subset
    of the matched equations, ``labels`` their (shift degree, x-power) names.
    """

    def __init__(self, message, subsystem=(), labels=()):
        self.subsystem = tuple(subsystem)
        self.labels = tuple(labels)
        super().__init__(message)


class SolverBlowup(QHeunError, RuntimeError):
    def __init__(self, message, progress=None):
        self.progress = progress or {}
        super().__init__(message)


class ConfigError(QHeunError, ValueError):
    pass
