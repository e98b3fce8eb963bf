"""Exception types shared across the package."""


class IndsubError(Exception):
    pass


class FormatError(IndsubError):
    """Malformed graph file or cache file."""


class UnknownPropertyError(IndsubError):
    """Property name not present in the registry."""


class PredicateError(IndsubError):
    """A user predicate raised during evaluation."""


class BudgetExceededError(IndsubError):
    """A brute-force enumeration would exceed its work budget."""


class InternalConsistencyError(IndsubError):
    """A mathematical identity the code relies on failed at runtime."""
