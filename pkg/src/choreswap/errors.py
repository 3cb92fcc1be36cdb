"""Exception hierarchy shared by every module."""


class ChoreswapError(Exception):
    """Base class for all errors raised by choreswap."""


class ContractViolation(ChoreswapError, ValueError):
    """A caller broke an operation's precondition."""


class MalformedAllocationError(ChoreswapError, ValueError):
    pass


class DomainError(ChoreswapError, ValueError):
    """Argument outside the domain of a function (chore not in ground set, p < 1, ...)."""


class MalformedTableError(ChoreswapError, ValueError):
    pass


class OracleContractError(ChoreswapError):
    """A cost oracle returned values that are not binary supermodular."""

    def __init__(self, message, agent=None):
        super().__init__(message)
        self.agent = agent


class ConfigurationError(ChoreswapError, ValueError):
    pass


class BudgetExceeded(ChoreswapError):
    """Enumeration refused because the search space is larger than the budget."""

    def __init__(self, required, budget):
        super().__init__(f"enumeration needs {required} evaluations, budget is {budget}")
        self.required = required
        self.budget = budget


class InvariantError(ChoreswapError, AssertionError):
    """An internal post-condition failed; indicates a bug or a lying oracle."""


class DocumentError(ChoreswapError, ValueError):
    """Instance or result document failed to parse or validate."""

    def __init__(self, message, field=None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
