"""Exception classes shared across the package."""


class UsageError(ValueError):
    """Arguments outside an operation's documented domain."""


class HypothesisViolation(ValueError):
    """Inputs fail a theorem's hypothesis; this is never a falsification."""


class NumericalInconsistencyError(ArithmeticError):
    """A floating-point evaluation disagrees with its exact counterpart."""


class InternalConsistencyError(AssertionError):
    """A proved bound failed; indicates a bug in this package."""


class ResourceBudgetError(MemoryError):
    """An enumeration or allocation would exceed its configured budget."""

    def __init__(self, budget_name, limit, requested=None):
        self.budget_name = budget_name
        self.limit = limit
        self.requested = requested
        msg = f"{budget_name} exceeded (limit {limit}"
        if requested is not None:
            msg += f", requested {requested}"
        super().__init__(msg + ")")
