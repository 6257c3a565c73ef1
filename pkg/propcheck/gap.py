from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from criteria.compare import compare
from criteria.schemas import CHOQUET, CriterionId, Embedding, PreferenceResult
from dtree.enumeration import enumerate_strategies
from dtree.generator import TreeProfile, random_tree
from dtree.model import ChanceNode, DecisionNode, DecisionTree, Edge, LeafNode
from dtree.reduction import strategy_lottery
from errors import KindMismatchError
from lottery.degrees import ONE, as_degree
from lottery.possibilistic import SimpleLottery
from propcheck.trials import MonotonicityTrial
from solver.dynamic import dp_optimize
from solver.exhaustive import exhaustive_optimize

LOGGER = logging.getLogger(__name__)


def _lot(entries: dict[str, str]) -> SimpleLottery:
    return SimpleLottery.of(entries)


def counterexample_lotteries(criterion: CriterionId) -> tuple[SimpleLottery, SimpleLottery, SimpleLottery, Fraction, Fraction]:
    """(L, L', L'', alpha, beta) breaking weak monotonicity for a Choquet criterion."""
    if criterion is CriterionId.CHN:
        return (
            _lot({"0": "0.2", "0.51": "0.5", "1": "1"}),
            _lot({"0": "0.1", "0.5": "0.6", "1": "1"}),
            _lot({"0": "0.01", "1": "1"}),
            as_degree("0.55"),
            ONE,
        )
    if criterion is CriterionId.CHPI:
        return (
            _lot({"0": "1", "0.51": "0.5", "1": "0.2"}),
            _lot({"0": "1", "0.5": "0.6", "1": "0.1"}),
            _lot({"0": "1", "0.51": "0.49"}),
            ONE,
            as_degree("0.55"),
        )
    raise KindMismatchError(f"no pinned counter-example for {criterion.value}")


def counterexample_trial(criterion: CriterionId, as_criterion: CriterionId | None = None) -> MonotonicityTrial:
    L, Lp, Lpp, alpha, beta = counterexample_lotteries(criterion)
    return MonotonicityTrial(L, Lp, Lpp, alpha, beta, as_criterion or criterion)


def _add_chance(nodes: dict, chance_id: str, lottery: SimpleLottery) -> None:
    edges = []
    for u, degree in lottery.items:
        leaf_id = f"L{sum(isinstance(n, LeafNode) for n in nodes.values())}"
        nodes[leaf_id] = LeafNode(u)
        edges.append(Edge(leaf_id, degree))
    nodes[chance_id] = ChanceNode(tuple(edges))


def counterexample_tree(criterion: CriterionId) -> DecisionTree:
    L, Lp, Lpp, alpha, beta = counterexample_lotteries(criterion)
    nodes: dict = {
        "D0": DecisionNode(("C0",)),
        "C0": ChanceNode((Edge("D1", alpha), Edge("D2", beta))),
        "D1": DecisionNode(("C1", "C2")),
        "D2": DecisionNode(("C3",)),
    }
    _add_chance(nodes, "C1", L)
    _add_chance(nodes, "C2", Lp)
    _add_chance(nodes, "C3", Lpp)
    return DecisionTree(nodes, "D0")


@dataclass(slots=True)
class GapWitness:
    tree: DecisionTree
    criterion: CriterionId
    dp_value: Fraction
    exhaustive_value: Fraction
    seed: int | None = None

    @property
    def gap(self) -> Fraction:
        return self.exhaustive_value - self.dp_value


def dp_gap(tree: DecisionTree, criterion: CriterionId) -> GapWitness | None:
    heuristic = dp_optimize(tree, criterion, unsafe=True)
    exact = exhaustive_optimize(tree, criterion)
    if exact.value > heuristic.value:
        return GapWitness(tree, criterion, heuristic.value, exact.value)
    return None


def gap_profile() -> TreeProfile:
    # mixed support maxima under one chance node is what Choquet criteria trip on
    return TreeProfile(
        depth=2,
        branching=3,
        fixed_branching=False,
        leaf_percent=50,
        max_decision_nodes=6,
        utility_grid=tuple(Fraction(x) for x in ("0", "1/2", "51/100", "1", "2", "4", "7", "9")),
        degree_grid=tuple(Fraction(x) for x in ("0.1", "0.2", "0.49", "0.5", "0.55", "0.6", "1")),
    )


def find_dp_gap(
    criterion: CriterionId,
    trials: int,
    seed: int,
    profile: TreeProfile | None = None,
) -> GapWitness | None:
    if criterion not in CHOQUET:
        raise KindMismatchError("dynamic programming is exact for weakly monotone criteria; search Choquet criteria only")
    profile = profile or gap_profile()
    for i in range(trials):
        tree = random_tree(seed + i, profile)
        witness = dp_gap(tree, criterion)
        if witness is not None:
            witness.seed = seed + i
            LOGGER.info("dp gap for %s at seed %d: %s", criterion.value, seed + i, witness.gap)
            return witness
    LOGGER.info("no dp gap for %s in %d trials from seed %d", criterion.value, trials, seed)
    return None


@dataclass(slots=True)
class OracleReport:
    criterion: CriterionId
    embedding: Embedding | None
    trees: int = 0
    strategies: int = 0
    beaten: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.beaten


def dp_oracle_check(
    criterion: CriterionId,
    trees: int,
    seed: int,
    profile: TreeProfile,
    embedding: Embedding | None = None,
) -> OracleReport:
    """Count trees where some enumerated strategy is strictly preferred to the DP one.

    Stated as "not beaten" rather than value equality because likely
    dominance has intransitive indifference.
    """
    report = OracleReport(criterion, embedding)
    for i in range(trees):
        tree = random_tree(seed + i, profile)
        result = dp_optimize(tree, criterion, embedding=embedding, unsafe=True)
        report.trees += 1
        for strategy in enumerate_strategies(tree):
            report.strategies += 1
            lottery = strategy_lottery(tree, strategy, check=False)
            if compare(criterion, lottery, result.reduced, embedding) is PreferenceResult.FIRST_STRICTLY_PREFERRED:
                report.beaten.append(seed + i)
                break
    return report
