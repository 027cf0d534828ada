from typing import Optional, Union

from HoCat.config import HOCAT_BUDGET
from HoCat.engine.errors import BudgetExceeded


class Budget:
    """
    Deterministic node counter shared by every search in one run.

    Each visited search node costs one tick; crossing the limit raises
    BudgetExceeded so that the whole computation is refused instead of
    returning a partial answer.
    """

    def __init__(self, limit: int = HOCAT_BUDGET):
        if limit <= 0:
            raise ValueError("budget must be positive")
        self.limit = limit
        self.used = 0

    def tick(self, nodes: int = 1, where: str = "search") -> None:
        self.used += nodes
        if self.used > self.limit:
            raise BudgetExceeded(f"node budget of {self.limit} exhausted during {where}")

    @property
    def remaining(self) -> int:
        return max(self.limit - self.used, 0)

    @classmethod
    def ensure(cls, budget: Optional[Union["Budget", int]]) -> "Budget":
        if budget is None:
            return cls()
        if isinstance(budget, Budget):
            return budget
        return cls(int(budget))

    def __repr__(self) -> str:
        return f"Budget(used={self.used}, limit={self.limit})"
