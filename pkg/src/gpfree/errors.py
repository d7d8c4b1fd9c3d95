"""Exception types shared across the library."""


class GpfreeError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidDError(GpfreeError):
    """d = 0 or d = 1 does not define a quadratic field."""


class NonSquarefreeError(GpfreeError):
    """d must be squarefree."""


class NotPrimeError(GpfreeError):
    """Argument expected to be a rational prime."""


class DomainError(GpfreeError):
    """Numeric argument outside the domain of the function."""


class ConsistencyError(GpfreeError):
    """Two independent evaluation routes disagree beyond their certified error bounds."""


class NotClassNumberOneError(GpfreeError):
    """Operation requires an imaginary quadratic field with class number 1."""


class NotImaginaryError(GpfreeError):
    """Operation requires an imaginary quadratic field."""


class LimitExceededError(GpfreeError):
    """Requested bound exceeds the configured search limit."""


class NoPresetError(GpfreeError):
    """No built-in interval system for this d."""
