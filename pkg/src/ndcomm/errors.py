"""Exceptions shared across the lab modules."""


class BudgetExceededError(RuntimeError):
    """An exhaustive sweep or exact solver was asked to exceed its configured budget."""

    def __init__(self, what: str, requested, budget):
        self.what = what
        self.requested = requested
        self.budget = budget
        super().__init__(f"{what}: requested {requested} exceeds budget {budget}")


class PromiseViolationError(ValueError):
    """An input promised to lie in the Hadamard code does not."""


class ProofError(ValueError):
    """A nondeterministic guess is malformed for the given parameters."""
