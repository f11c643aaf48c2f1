class BudgetExceeded(RuntimeError):
    """An exact search or counting step went over its size or time budget."""


class GenerationExhausted(RuntimeError):
    """Rejection sampling ran out of attempts for the requested class."""


class InvariantViolation(AssertionError):
    pass
