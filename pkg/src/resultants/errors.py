"""Exception types shared by every engine."""


class InputError(ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class BudgetExceeded(RuntimeError):
    """A computation was refused because its predicted size exceeds the cap.

    ``grading`` names the blocking grading vector when one applies.
    """

    def __init__(self, message, *, estimate=None, cap=None, grading=None):
        super().__init__(message)
        self.estimate = estimate
        self.cap = cap
        self.grading = grading
