"""Exception types raised by the engine."""


class ParameterError(ValueError):
    """A constructor or operation received parameters outside its domain."""


class DomainError(ValueError):
    """An evaluation point lies outside the valid domain (e.g. t < 0)."""


class InsufficientDataError(ValueError):
    """A series is too short for the requested fit."""


class SeriesNotConvergedError(RuntimeError):
    """The renewal series hit its term cap before the tail fell below
    the truncation threshold.

    The partial sum is preserved for inspection.
    """

    def __init__(self, message, partial_sum, n_terms, last_term, t=None):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.n_terms = n_terms
        self.last_term = last_term
        self.t = t
