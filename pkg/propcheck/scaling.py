from __future__ import annotations

import logging
from dataclasses import asdict, dataclass

from criteria.schemas import CriterionId
from dtree.enumeration import count_strategies, enumerate_strategies
from dtree.generator import TreeProfile, random_tree
from solver.dynamic import dp_optimize

LOGGER = logging.getLogger(__name__)


@dataclass(slots=True)
class ScalingRow:
    depth: int
    decision_nodes: int
    edges: int
    dp_edges_visited: int
    strategies: int
    enumerated: int | None
    dp_wall_time_sec: float

    @property
    def linear(self) -> bool:
        return self.dp_edges_visited == self.edges

    @property
    def closed_form(self) -> bool:
        return self.enumerated is None or self.enumerated == self.strategies

    def as_dict(self) -> dict:
        return asdict(self)


def scaling_report(
    depths: range | list[int],
    branching: int,
    seed: int,
    enumerate_limit: int = 20000,
    criterion: CriterionId = CriterionId.UPES,
) -> list[ScalingRow]:
    """One generated tree per depth; strategies are enumerated only while the count stays under the limit."""
    rows: list[ScalingRow] = []
    for depth in depths:
        tree = random_tree(seed, TreeProfile(depth=depth, branching=branching))
        result = dp_optimize(tree, criterion)
        total = count_strategies(tree)
        enumerated = sum(1 for _ in enumerate_strategies(tree)) if total <= enumerate_limit else None
        row = ScalingRow(
            depth=depth,
            decision_nodes=len(tree.decision_nodes()),
            edges=tree.edge_count(),
            dp_edges_visited=result.stats.edges_visited,
            strategies=total,
            enumerated=enumerated,
            dp_wall_time_sec=result.stats.wall_time_sec,
        )
        LOGGER.info("depth=%d decisions=%d edges=%d strategies=%d", depth, row.decision_nodes, row.edges, total)
        rows.append(row)
    return rows
