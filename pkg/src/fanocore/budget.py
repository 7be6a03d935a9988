from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum


class Outcome(str, Enum):
    WITNESS = "witness"
    REFUTED = "refuted"
    BUDGET_EXCEEDED = "budget-exceeded"
    PRECONDITION_FAILED = "precondition-failed"


class BudgetExceeded(Exception):
    pass


DEFAULT_NODES = 10**7


@dataclass
class Budget:
    """Node-count and wall-clock cap for one search.  ``None`` means unlimited."""

    max_nodes: int | None = DEFAULT_NODES
    max_seconds: float | None = None

    def start(self) -> "Meter":
        return Meter(self)

    @classmethod
    def unlimited(cls) -> "Budget":
        return cls(None, None)


class Meter:
    __slots__ = ("nodes", "_limit", "_deadline")

    def __init__(self, budget: Budget | None):
        budget = budget or Budget()
        self.nodes = 0
        self._limit = budget.max_nodes if budget.max_nodes is not None else float("inf")
        self._deadline = (
            time.monotonic() + budget.max_seconds if budget.max_seconds is not None else None
        )

    def tick(self, k: int = 1) -> None:
        self.nodes += k
        if self.nodes > self._limit:
            raise BudgetExceeded(f"node budget of {self._limit} exhausted")
        if self._deadline is not None and self.nodes & 1023 == 0 and time.monotonic() > self._deadline:
            raise BudgetExceeded("time budget exhausted")
