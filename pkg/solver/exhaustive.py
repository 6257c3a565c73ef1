from __future__ import annotations

import logging
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import islice

from criteria.compare import compare, compare_values, evaluate
from criteria.schemas import PAIRWISE_ONLY, CriterionId, Embedding, PreferenceResult
from dtree.enumeration import count_strategies, decisions_below, enumerate_strategies
from dtree.model import BOTTOM, DecisionTree, NodeKind, Strategy
from dtree.reduction import strategy_lottery
from dtree.validation import require_valid_tree
from errors import BudgetExceededError, KindMismatchError
from lottery.degrees import ONE, ZERO
from solver.results import Method, OptimizationResult, SolverStats

LOGGER = logging.getLogger(__name__)

BATCH_SIZE = 256
IN_FLIGHT_PER_WORKER = 2


def _better(criterion: CriterionId, value, incumbent) -> bool:
    return compare_values(criterion, value, incumbent) is PreferenceResult.FIRST_STRICTLY_PREFERRED


def _best_in_batch(tree: DecisionTree, criterion: CriterionId, embedding: Embedding | None, batch: list[Strategy]):
    best, best_value = None, None
    for strategy in batch:
        value = evaluate(criterion, strategy_lottery(tree, strategy, check=False), embedding)
        if best_value is None or _better(criterion, value, best_value):
            best, best_value = strategy, value
    return best, best_value, len(batch)


def _search_sequential(tree, criterion, embedding, stats):
    best, best_lottery, best_value = None, None, None
    pairwise = criterion in PAIRWISE_ONLY
    for strategy in enumerate_strategies(tree):
        lottery = strategy_lottery(tree, strategy, check=False)
        stats.strategies_examined += 1
        if best is None:
            best, best_lottery = strategy, lottery
            best_value = None if pairwise else evaluate(criterion, lottery, embedding)
            continue
        if pairwise:
            if compare(criterion, lottery, best_lottery) is PreferenceResult.FIRST_STRICTLY_PREFERRED:
                best, best_lottery = strategy, lottery
            continue
        value = evaluate(criterion, lottery, embedding)
        if _better(criterion, value, best_value):
            best, best_lottery, best_value = strategy, lottery, value
    return best, best_lottery


def _search_parallel(tree, criterion, embedding, stats, workers):
    stream = enumerate_strategies(tree)
    best, best_value = None, None
    pending: deque = deque()

    def merge(future) -> None:
        nonlocal best, best_value
        strategy, value, examined = future.result()
        stats.strategies_examined += examined
        if best_value is None or _better(criterion, value, best_value):
            best, best_value = strategy, value

    # futures are merged in submission order, so the first optimum survives
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for batch in iter(lambda: list(islice(stream, BATCH_SIZE)), []):
            if len(pending) >= workers * IN_FLIGHT_PER_WORKER:
                merge(pending.popleft())
            pending.append(pool.submit(_best_in_batch, tree, criterion, embedding, batch))
        while pending:
            merge(pending.popleft())
    return best, strategy_lottery(tree, best, check=False)


def _max_leaf_below(tree: DecisionTree) -> dict[str, Fraction]:
    best: dict[str, Fraction] = {}
    for node_id in reversed(list(tree.walk())):
        node = tree.nodes[node_id]
        if node.kind is NodeKind.LEAF:
            best[node_id] = node.payload
        else:
            best[node_id] = max(best[c] for c in node.children)
    return best


def _committed(tree: DecisionTree, assigned: dict[str, str]) -> dict[Fraction, Fraction]:
    """Max over reachable leaves of the min edge degree along the path; open decisions add nothing."""
    acc: dict[Fraction, Fraction] = {}
    stack: list[tuple[str, Fraction]] = [(tree.root, ONE)]
    while stack:
        node_id, reach = stack.pop()
        node = tree.nodes[node_id]
        if node.kind is NodeKind.LEAF:
            if reach > acc.get(node.payload, ZERO):
                acc[node.payload] = reach
        elif node.kind is NodeKind.DECISION:
            chosen = assigned.get(node_id)
            if chosen is not None:
                stack.append((chosen, reach))
        else:
            stack.extend((e.child, min(reach, e.weight)) for e in node.edges if e.weight > 0)
    return acc


def chn_upper_bound(committed: dict[Fraction, Fraction], ceiling: Fraction) -> Fraction:
    """Integral over [0, ceiling] of 1 - (max committed degree strictly below u).

    Adding possibility mass never raises a necessity degree, and the final
    support cannot exceed ``ceiling``, so no completion scores above this.
    """
    total, previous, running = ZERO, ZERO, ZERO
    for u in sorted(k for k in committed if k < ceiling):
        total += (u - previous) * (ONE - running)
        running = max(running, committed[u])
        previous = u
    return total + (ceiling - previous) * (ONE - running)


def _branch_and_bound_chn(tree: DecisionTree, stats: SolverStats):
    ceilings = _max_leaf_below(tree)
    order = tree.decision_nodes()
    below = {c: decisions_below(tree, c) for c in tree.walk() if tree.kind(c) is NodeKind.CHANCE}
    best, best_lottery, best_value = None, None, None
    stack: list[tuple[tuple[tuple[str, str], ...], tuple[str, ...]]] = [((), (tree.root,))]
    while stack:
        assigned, pending = stack.pop()
        chosen = dict(assigned)
        if best_value is not None:
            committed = _committed(tree, chosen)
            ceiling = max([*committed, *(ceilings[d] for d in pending)])
            if chn_upper_bound(committed, ceiling) <= best_value:
                stats.pruned += 1
                continue
        if not pending:
            strategy = Strategy({d: chosen.get(d, BOTTOM) for d in order})
            lottery = strategy_lottery(tree, strategy, check=False)
            stats.strategies_examined += 1
            value = evaluate(CriterionId.CHN, lottery)
            if best_value is None or value > best_value:
                best, best_lottery, best_value = strategy, lottery, value
            continue
        head, rest = pending[0], pending[1:]
        for child in reversed(tree.children(head)):
            stack.append((assigned + ((head, child),), below[child] + rest))
    return best, best_lottery


def exhaustive_optimize(
    tree: DecisionTree,
    criterion: CriterionId,
    embedding: Embedding | None = None,
    budget: int | None = None,
    prune: bool = False,
    workers: int = 1,
) -> OptimizationResult:
    require_valid_tree(tree, criterion)
    started = time.perf_counter()
    total = count_strategies(tree)
    if budget and total > budget:
        LOGGER.warning("tree has %d strategies, budget is %d", total, budget)
        raise BudgetExceededError(budget)
    stats = SolverStats()
    if prune:
        if criterion is not CriterionId.CHN:
            raise KindMismatchError("the pruning bound is only admissible for chn")
        best, reduced = _branch_and_bound_chn(tree, stats)
    elif workers > 1 and criterion not in PAIRWISE_ONLY and total > BATCH_SIZE:
        best, reduced = _search_parallel(tree, criterion, embedding, stats, workers)
    else:
        best, reduced = _search_sequential(tree, criterion, embedding, stats)
    stats.wall_time_sec = time.perf_counter() - started
    LOGGER.info(
        "exhaustive %s: examined=%d pruned=%d of %d", criterion.value, stats.strategies_examined, stats.pruned, total
    )
    return OptimizationResult(
        strategy=best,
        value=evaluate(criterion, reduced, embedding),
        reduced=reduced,
        method=Method.EXHAUSTIVE,
        criterion=criterion,
        embedding=embedding,
        stats=stats,
    )
