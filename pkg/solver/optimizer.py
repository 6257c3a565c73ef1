from __future__ import annotations

import logging

from criteria.binary import BinaryUtility, pu_compare
from criteria.compare import CriterionValue
from criteria.schemas import PAIRWISE_ONLY, CriterionId, Embedding, PreferenceResult, is_weakly_monotone
from dtree.model import DecisionTree
from errors import KindMismatchError
from lottery.degrees import KappaRank
from solver.dynamic import dp_optimize
from solver.exhaustive import exhaustive_optimize
from solver.results import Method, OptimizationResult

LOGGER = logging.getLogger(__name__)


def optimize(
    tree: DecisionTree,
    criterion: CriterionId,
    method: Method = Method.AUTO,
    embedding: Embedding | None = None,
    unsafe: bool = False,
    budget: int | None = None,
    workers: int = 1,
    prune: bool = False,
) -> OptimizationResult:
    if method is Method.AUTO:
        method = Method.DP if is_weakly_monotone(criterion) else Method.EXHAUSTIVE
        LOGGER.info("criterion %s dispatched to %s", criterion.value, method.value)
    if method is Method.DP:
        return dp_optimize(tree, criterion, embedding=embedding, unsafe=unsafe)
    return exhaustive_optimize(tree, criterion, embedding=embedding, budget=budget, prune=prune, workers=workers)


def reaches(criterion: CriterionId, value: CriterionValue, threshold: CriterionValue) -> bool:
    if criterion is CriterionId.PU:
        if not isinstance(threshold, BinaryUtility):
            raise KindMismatchError("a PU threshold is a binary utility")
        return pu_compare(value, threshold) is not PreferenceResult.SECOND_STRICTLY_PREFERRED
    if criterion is CriterionId.OMEU:
        if not isinstance(threshold, KappaRank):
            raise KindMismatchError("an OMEU threshold is a kappa rank")
        return value <= threshold
    return value >= threshold


def meets_threshold(
    tree: DecisionTree,
    criterion: CriterionId,
    threshold: CriterionValue,
    embedding: Embedding | None = None,
    budget: int | None = None,
) -> tuple[bool, OptimizationResult]:
    """Decision version of the optimization problem: is some strategy at least ``threshold``?"""
    if criterion in PAIRWISE_ONLY:
        raise KindMismatchError(f"{criterion.value} compares strategies pairwise and has no threshold form")
    result = optimize(tree, criterion, embedding=embedding, budget=budget)
    return reaches(criterion, result.value, threshold), result
