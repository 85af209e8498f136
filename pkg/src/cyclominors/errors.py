"""Exception types shared across the package."""


class UsageError(ValueError):
    """A caller violated an operation's precondition."""


class TheoremViolation(RuntimeError):
    """An exact computation contradicted the sparsity theorem.

    This must never happen.  It is raised instead of returning a quiet
    ``False`` so that a counterexample can never be swallowed.
    """

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload
