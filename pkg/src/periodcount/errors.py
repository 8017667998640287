"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class DivisibilityViolation(ArithmeticError):
    """A periodic-point count is not divisible by the orbit length."""

    def __init__(self, m, count, divisor):
        self.m = m
        self.count = count
        self.divisor = divisor
        super().__init__(f"m={m}: count {count} is not divisible by {divisor}")


class HorizonTooSmall(LookupError):
    """A derived array needs an entry beyond the computed horizon."""

    def __init__(self, m, n, horizon):
        self.m = m
        self.n = n
        self.horizon = horizon
        super().__init__(f"entry (m={m}, n={n}) lies beyond horizon {horizon}")


class BudgetExceeded(RuntimeError):
    """A lap list or word would grow past the configured size cap."""


class OutOfDomain(DomainError):
    pass


class InfiniteSolutions(ArithmeticError):
    """A lap lies on the target line, so the solution set is a whole interval."""


class ClosureViolation(DomainError):
    """Some node y-values are not node x-values."""

    def __init__(self, offending):
        self.offending = tuple(offending)
        super().__init__(f"y-values not among x-nodes: {', '.join(map(str, self.offending))}")


class MissingRule(KeyError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"no rewriting rule for edge {edge[0]}{edge[1]}")
