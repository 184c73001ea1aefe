"""Exception types raised across the package."""


class FFPrimesError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(FFPrimesError):
    pass


class ZeroPolynomial(FFPrimesError):
    pass


class DivideByZero(FFPrimesError, ZeroDivisionError):
    pass


class PoleAt(FFPrimesError):
    """Evaluation point sits on a pole of the zeta function."""

    def __init__(self, z):
        super().__init__(f"zeta has a pole at z={z!r}")
        self.z = z


class QuadratureNonConvergence(FFPrimesError):
    pass


class NonPositiveResult(FFPrimesError):
    pass


class AlphaNotCoprime(FFPrimesError):
    pass


class DegenerateR(FFPrimesError):
    pass


class InvalidInput(FFPrimesError, ValueError):
    pass


class BudgetExceeded(FFPrimesError):
    """Work limit reached; ``partial`` carries whatever was finished."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotAdmissible(FFPrimesError):
    pass


class ZeroModulus(FFPrimesError):
    pass


class DegenerateShifts(FFPrimesError):
    pass


class CorruptCache(FFPrimesError):
    pass


class VersionMismatch(FFPrimesError):
    pass


class ConfigError(FFPrimesError):
    pass
