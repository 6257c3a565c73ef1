from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from criteria.compare import CriterionValue
from criteria.schemas import CriterionId, Embedding
from dtree.model import Strategy
from lottery.kappa import KappaLottery
from lottery.possibilistic import SimpleLottery


class Method(str, Enum):
    AUTO = "auto"
    DP = "dp"
    EXHAUSTIVE = "exhaustive"


@dataclass(slots=True)
class SolverStats:
    # node and edge visits are counted by dynamic programming only
    nodes_visited: int = 0
    edges_visited: int = 0
    strategies_examined: int = 0
    pruned: int = 0
    wall_time_sec: float = 0.0


@dataclass(slots=True)
class OptimizationResult:
    strategy: Strategy
    value: CriterionValue
    reduced: Union[SimpleLottery, KappaLottery]
    method: Method
    criterion: CriterionId
    embedding: Embedding | None = None
    heuristic: bool = False
    stats: SolverStats = field(default_factory=SolverStats)

    @property
    def label(self) -> str:
        return "heuristic" if self.heuristic else self.method.value
