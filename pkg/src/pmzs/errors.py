"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ConvergenceError(RuntimeError):
    """A series cannot converge for the given parameters."""


class IllegalMoveError(ValueError):
    """A transport move was applied to a state of the wrong shape."""
