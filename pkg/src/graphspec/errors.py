"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Malformed graph6 or edge-list input.

    ``line`` is the 1-based line number of the offending input line, when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OrderTooSmallError(ValueError):
    """A linear form of length k was evaluated on a graph with fewer than k vertices."""


class BudgetExceededError(RuntimeError):
    """A requested computation exceeds the configured size or cost cap."""


class ConvergenceError(RuntimeError):
    """The eigensolver did not reach its off-diagonal tolerance."""
