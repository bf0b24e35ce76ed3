"""Exception types raised by the certification library."""


class WrightCertError(Exception):
    """Base class for all library errors."""


class DomainError(WrightCertError, ValueError):
    """An operation was applied outside the domain where it is defined."""


class CapacityError(WrightCertError):
    """A Fourier vector would exceed the supported mode range."""


class InvalidRegime(WrightCertError):
    """Parameters fall outside the range where a bound is valid."""


class GapError(WrightCertError):
    """The small/large amplitude dichotomy cannot be established."""


class VerificationError(WrightCertError):
    """A certified comparison that is required internally failed."""


class Inconclusive(WrightCertError):
    """A bisection search ran out of budget without deciding."""

    def __init__(self, message, box=None):
        super().__init__(message)
        self.box = box


class ConvergenceError(WrightCertError):
    """Newton iteration did not converge."""
