"""Exception types shared across the package."""


class InputError(ValueError):
    """A value violates an operation's preconditions."""


class SizeError(InputError):
    """An input exceeds a configured size cap or brute-force window."""


class BudgetError(RuntimeError):
    """A search exhausted its node budget before completing.

    Carries the partial statistics so callers can report how far the
    search got.
    """

    def __init__(self, message, node_count=0, generators_found=0):
        super().__init__(message)
        self.node_count = node_count
        self.generators_found = generators_found
