from __future__ import annotations


class FinOperadError(Exception):
    """Base class for all errors raised by this package."""


class CompositionMismatch(FinOperadError, ValueError):
    """Two morphisms were composed whose endpoints do not agree."""


class InvalidInput(FinOperadError, ValueError):
    """An argument violates the documented precondition of an operation."""


class IncompleteData(FinOperadError, KeyError):
    """A finite presentation lacks an entry that an operation needs."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "incomplete data"


class BudgetExceeded(FinOperadError, RuntimeError):
    """An enumeration would exceed its configured size budget."""

    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: {size} exceeds budget {budget}")
        self.what = what
        self.size = size
        self.budget = budget


class CheckFailed(FinOperadError, ValueError):
    """A structural check failed; ``witnesses`` locates the failures."""

    def __init__(self, message: str, witnesses: list | None = None):
        super().__init__(message)
        self.witnesses = list(witnesses or [])
