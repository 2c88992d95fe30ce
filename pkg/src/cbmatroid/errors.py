class MatroidInputError(ValueError):
    """Malformed input: bad labels, invalid bases, invalid parameters."""


class InvalidPartitionError(MatroidInputError):
    def __init__(self, message, subset=None):
        super().__init__(message)
        self.subset = subset


class ParameterError(MatroidInputError):
    pass


class DegenerateError(MatroidInputError):
    pass


class ScopeError(RuntimeError):
    """The instance is outside the sizes this library computes exactly."""


class SearchBudgetExceeded(ScopeError):
    def __init__(self, budget, spent):
        super().__init__(f"search budget of {budget} partial tuples exhausted ({spent} expanded)")
        self.budget = budget
        self.spent = spent


class ConventionMismatchError(RuntimeError):
    """Neither z-convention reproduces the matroid polytope."""

    def __init__(self, message, candidates):
        super().__init__(message)
        self.candidates = candidates
