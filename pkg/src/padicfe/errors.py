"""Exception hierarchy.

Every domain failure derives from :class:`DomainError`; the CLI reports the
class name and exits with status 1.
"""


class DomainError(ValueError):
    """Base class for all domain errors raised by padicfe."""


class NotPrime(DomainError):
    pass


class AmbiguousPrecision(DomainError):
    """A truncated p-adic integer agrees with the probe up to its precision.

    The true valuation is only known to be at least ``lower_bound``.
    """

    def __init__(self, lower_bound: int, message: str = ""):
        self.lower_bound = lower_bound
        super().__init__(message or f"valuation is at least {lower_bound} (precision exhausted)")


class NonResidue(DomainError):
    pass


class EvenPrimeUnsupported(DomainError):
    pass


class ZeroSeries(DomainError):
    pass


class AllZero(DomainError):
    pass


class UnsupportedElement(DomainError):
    pass


class RootMismatch(DomainError):
    pass


class PoleHit(DomainError):
    pass


class ZeroInput(DomainError):
    pass


class GZeroAtOrigin(DomainError):
    pass


class InsufficientJet(DomainError):
    pass


class BoundViolation(DomainError):
    pass


class Inconsistent(DomainError):
    pass


class FreeParameter(DomainError):
    pass


class NotASolution(DomainError):
    pass


class InvalidInstance(DomainError):
    pass
