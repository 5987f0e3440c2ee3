"""Exception types shared across the package."""


class ConebeliefError(Exception):
    """Base class for all package errors."""


class InputError(ConebeliefError):
    """Malformed or mismatched input data (wrong space, bad dimension, ...)."""


class ConvergenceError(ConebeliefError):
    """An iterative routine hit its cap before reaching tolerance."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class GenerationError(ConebeliefError):
    """Random instance generation exhausted its resample budget."""
