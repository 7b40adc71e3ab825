"""Exception hierarchy shared by all modules."""


class DyadicError(Exception):
    """Base class for errors raised by dslab."""


class DomainError(DyadicError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResolutionError(DyadicError, ValueError):
    """The requested index or rank needs a finer resolution than available."""


class ModeError(DyadicError, TypeError):
    """Exact arithmetic was required but a float-valued input was supplied."""


class DegenerateWeightsError(DomainError):
    """Normalising sum Q_n vanishes."""
