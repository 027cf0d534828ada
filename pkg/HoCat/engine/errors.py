"""
Exceptions raised by the engine.

Every exception carries the exit code the command line reports for it:
2 for invalid input or misuse, 3 for refusals (budget, confluence) and
1 for a property that was checked and failed.
"""

from typing import Any, Optional


class HoCatError(Exception):
    exit_code = 1

    def __init__(self, message: str = "", counterexample: Optional[Any] = None):
        super().__init__(message)
        self.counterexample = counterexample


# input errors
class InstanceError(HoCatError):
    """Instance, battery or functor file that cannot be turned into valid data."""

    exit_code = 2


class UsageError(HoCatError):
    exit_code = 2


class InvalidSquare(UsageError):
    pass


class NoCoproduct(UsageError):
    pass


class NoProduct(UsageError):
    pass


class NotFibrantCofibrant(UsageError):
    pass


class MalformedZigzag(UsageError):
    pass


class MissingQ(UsageError):
    pass


# refusals
class Refusal(HoCatError):
    exit_code = 3


class BudgetExceeded(Refusal):
    pass


class NonConfluent(Refusal):
    pass


# property failures
class PropertyFailure(HoCatError):
    exit_code = 1


class PreconditionFailed(PropertyFailure):
    """The functor sends a weak equivalence between cofibrant objects outside the target W."""


class NotLocalization(PropertyFailure):
    pass


class NoFactorization(PropertyFailure):
    pass


class ModelInconsistency(PropertyFailure):
    pass


class EngineInconsistency(PropertyFailure):
    pass
