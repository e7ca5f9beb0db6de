"""Exception hierarchy for nanobeam."""


class NanobeamError(Exception):
    """Base class for all library errors."""


class DomainError(NanobeamError, ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedBoundary(NanobeamError, ValueError):
    """The operation is only defined for a different boundary condition."""


class NumericalFailure(NanobeamError, RuntimeError):
    """Base class for root-finder failures."""

    def __init__(self, message, k=None):
        super().__init__(message)
        self.k = k


class BracketFailure(NumericalFailure):
    """No sign change was found around the asymptotic seed of a mode."""


class NoConvergence(NumericalFailure):
    """The root polish exhausted its iteration budget."""
