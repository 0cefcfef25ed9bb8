"""Exception hierarchy shared by every stage of the pipeline."""


class MorletRidgeError(Exception):
    """Base class for all package errors."""


class WaveletDomainError(MorletRidgeError, ValueError):
    """A parameter lies outside the domain an operation supports."""


class WaveletNumericError(MorletRidgeError, ArithmeticError):
    """A closed form or root search could not be evaluated reliably."""


class IntegrationError(MorletRidgeError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class ResolutionError(MorletRidgeError, ValueError):
    """A scale is too small to be resolved at the signal's sample spacing."""


class SpanError(MorletRidgeError, ValueError):
    """A scale is too large for the signal's time span."""


class NyquistError(MorletRidgeError, ValueError):
    """A generator frequency is at or above the Nyquist frequency."""


class DegenerateScalogramError(MorletRidgeError, ValueError):
    """The scalogram is identically zero, so no ridge exists."""


class PassbandError(MorletRidgeError, ValueError):
    """A ridge point falls outside the wavelet's frequency passband."""


class FormatError(MorletRidgeError, ValueError):
    """A file does not follow the expected layout."""
