class TangleError(ValueError):
    """Base class for invalid inputs to threetangle routines."""


class ZeroVector(TangleError):
    pass


class BadWeights(TangleError):
    pass


class BadSubset(TangleError):
    pass


class RankTooHigh(TangleError):
    pass


class DomainError(TangleError):
    pass


class OutOfBall(TangleError):
    pass


class NotOrthonormal(TangleError):
    pass


class DegenerateAllZero(TangleError):
    """The tangle polynomial vanishes identically on the span."""


class BudgetExceeded(RuntimeWarning):
    """A local search hit its evaluation budget before converging."""


class InvalidState(TangleError):
    """A ket or density matrix violates one of its invariants."""
