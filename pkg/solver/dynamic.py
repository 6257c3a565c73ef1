"""Backward induction for weakly monotone criteria.

One pass over the tree from the leaves up. Lotteries are registers aligned on
the sorted distinct leaf outcomes of the whole tree. At a chance node each
child's register is folded in (max-min, or min-sum for kappa trees); at a
decision node the first declared child is kept unless a later child is
strictly preferred. Every edge is crossed exactly once.
"""

from __future__ import annotations

import logging
import time

from criteria.compare import compare, evaluate
from criteria.schemas import CHOQUET, CriterionId, Embedding, PreferenceResult
from dtree.model import DecisionTree, NodeKind, Strategy, TreeMode, canonical_strategy
from dtree.validation import require_valid_tree
from errors import UnsafeCriterionError
from lottery.degrees import INFINITY, KAPPA_ZERO, ONE, ZERO
from lottery.kappa import KappaLottery
from lottery.possibilistic import SimpleLottery
from solver.results import Method, OptimizationResult, SolverStats

LOGGER = logging.getLogger(__name__)


class _Registers:
    def __init__(self, tree: DecisionTree) -> None:
        self.kappa = tree.mode is TreeMode.KAPPA
        self.scale = tree.leaf_payloads()
        self.index = {u: i for i, u in enumerate(self.scale)}

    def empty(self) -> list:
        return [INFINITY if self.kappa else ZERO] * len(self.scale)

    def certain(self, payload) -> list:
        reg = self.empty()
        reg[self.index[payload]] = KAPPA_ZERO if self.kappa else ONE
        return reg

    def fold(self, acc: list, weight, child: list) -> None:
        # max-min fold, min-sum for kappa registers
        if self.kappa:
            for i, k in enumerate(child):
                acc[i] = min(acc[i], weight + k)
        else:
            for i, d in enumerate(child):
                acc[i] = max(acc[i], min(weight, d))

    def lottery(self, reg: list) -> SimpleLottery | KappaLottery:
        if self.kappa:
            return KappaLottery(tuple((self.scale[i], k) for i, k in enumerate(reg) if not k.infinite))
        return SimpleLottery(tuple((self.scale[i], d) for i, d in enumerate(reg) if d > 0))


def dp_optimize(
    tree: DecisionTree,
    criterion: CriterionId,
    embedding: Embedding | None = None,
    unsafe: bool = False,
) -> OptimizationResult:
    heuristic = criterion in CHOQUET
    if heuristic and not unsafe:
        raise UnsafeCriterionError(
            f"{criterion.value} is not weakly monotone; dynamic programming may miss the optimum "
            "(use exhaustive search, or allow an unsafe heuristic run)"
        )
    if heuristic:
        LOGGER.warning("running dynamic programming under %s; result is a heuristic", criterion.value)
    require_valid_tree(tree, criterion)
    started = time.perf_counter()
    stats = SolverStats()
    regs = _Registers(tree)
    registers: dict[str, list] = {}
    lotteries: dict[str, SimpleLottery | KappaLottery] = {}
    choices: dict[str, str] = {}

    stack: list[tuple[str, bool]] = [(tree.root, False)]
    while stack:
        node_id, expanded = stack.pop()
        node = tree.nodes[node_id]
        if node.kind is NodeKind.LEAF:
            stats.nodes_visited += 1
            registers[node_id] = regs.certain(node.payload)
            continue
        if not expanded:
            stack.append((node_id, True))
            stack.extend((child, False) for child in reversed(node.children))
            continue
        stats.nodes_visited += 1
        if node.kind is NodeKind.CHANCE:
            acc = regs.empty()
            for edge in node.edges:
                regs.fold(acc, edge.weight, registers.pop(edge.child))
                lotteries.pop(edge.child, None)
                stats.edges_visited += 1
            registers[node_id] = acc
            continue
        best = node.children[0]
        best_lottery = lotteries.setdefault(best, regs.lottery(registers[best]))
        stats.edges_visited += 1
        for child in node.children[1:]:
            stats.edges_visited += 1
            candidate = lotteries.setdefault(child, regs.lottery(registers[child]))
            # replace only on strict improvement
            if compare(criterion, candidate, best_lottery, embedding) is PreferenceResult.FIRST_STRICTLY_PREFERRED:
                best, best_lottery = child, candidate
        choices[node_id] = best
        registers[node_id] = registers[best]
        lotteries[node_id] = best_lottery
        for child in node.children:
            registers.pop(child, None)
            lotteries.pop(child, None)
        LOGGER.debug("decision %s -> %s", node_id, best)

    reduced = lotteries.get(tree.root) or regs.lottery(registers[tree.root])
    strategy = canonical_strategy(tree, Strategy(choices))
    stats.wall_time_sec = time.perf_counter() - started
    return OptimizationResult(
        strategy=strategy,
        value=evaluate(criterion, reduced, embedding),
        reduced=reduced,
        method=Method.DP,
        criterion=criterion,
        embedding=embedding,
        heuristic=heuristic,
        stats=stats,
    )
