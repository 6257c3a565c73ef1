from __future__ import annotations


class PossibilisticError(ValueError):
    """Base class for every domain failure raised by the toolkit."""


class NormalizationError(PossibilisticError):
    pass


class ScaleError(PossibilisticError):
    pass


class KindMismatchError(PossibilisticError):
    pass


class StrategyError(PossibilisticError):
    pass


class UnsafeCriterionError(PossibilisticError):
    pass


class BudgetExceededError(PossibilisticError):
    def __init__(self, budget: int) -> None:
        super().__init__(f"strategy budget exceeded: more than {budget} strategies")
        self.budget = budget


class DocumentError(PossibilisticError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column
