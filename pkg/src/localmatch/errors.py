"""Exception types raised across the package."""


class GraphError(ValueError):
    """Base class for malformed graph input."""


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class DegreeBoundExceeded(GraphError):
    pass


class ParseError(GraphError):
    """Edge-list text could not be parsed; ``line`` is 1-based (0 if unknown)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class InvalidPath(ValueError):
    """A vertex sequence is not an augmenting path for the given matching."""


class RadiusMismatch(ValueError):
    pass


class InfeasibleSpec(ValueError):
    """Generator parameters admit no graph (e.g. odd n*d for a regular graph)."""


class BudgetError(RuntimeError):
    """A configured computational budget was exhausted."""


class BallTooLarge(BudgetError):
    pass


class TooLarge(BudgetError):
    pass


class ProbeBudgetExceeded(BudgetError):
    pass


class RetryBudgetExceeded(BudgetError):
    pass
