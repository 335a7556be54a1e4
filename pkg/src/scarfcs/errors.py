"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(RuntimeError):
    """A series or iteration hit its cap before reaching tolerance."""


class UnitarityError(RuntimeError):
    """A time slice of an evolved state failed the norm check.

    Signals a truncation or normalization bug rather than user error,
    so it is deliberately not a ValueError.
    """
