"""Exception hierarchy shared by the computation modules and the CLI."""


class RationalFourfoldsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RationalFourfoldsError, ValueError):
    """Input outside the domain of an operation."""


class NotSimplyConnectedError(DomainError):
    """The Milnor-Moore hypothesis fails: the base space has pi_1 = Z/2."""

    def __init__(self, space: str, diagnosis: str):
        self.space = space
        self.diagnosis = diagnosis
        super().__init__(f"{space} is not simply connected: {diagnosis}")


class BudgetExceededError(RationalFourfoldsError, RuntimeError):
    """A computation was refused because it would exceed a configured budget."""

    def __init__(self, message: str, degree: int, size: int, limit: int):
        self.degree = degree
        self.size = size
        self.limit = limit
        super().__init__(f"{message} (degree {degree}: {size} > limit {limit})")


class ConsistencyError(RationalFourfoldsError, RuntimeError):
    """An internal oracle disagreed with a computed value."""

    def __init__(self, message: str, expected, actual):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{message}: expected {expected}, got {actual}")
