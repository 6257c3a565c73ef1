from __future__ import annotations

from errors import KindMismatchError, StrategyError
from dtree.model import DecisionTree, NodeKind, Strategy, TreeMode
from dtree.validation import validate_strategy
from lottery.kappa import KappaLottery, reduce_kappa
from lottery.possibilistic import CompoundLottery, LotteryNode, SimpleLottery, reduce_pairs


def leaf_lottery(tree: DecisionTree, node_id: str) -> SimpleLottery | KappaLottery:
    payload = tree.nodes[node_id].payload
    if tree.mode is TreeMode.KAPPA:
        return KappaLottery.certain(payload)
    return SimpleLottery.certain(payload)


def _require_valid(tree: DecisionTree, strategy: Strategy) -> None:
    issues = validate_strategy(tree, strategy)
    if issues:
        raise StrategyError(f"invalid strategy: {issues[0]}")


def strategy_lottery(tree: DecisionTree, strategy: Strategy, check: bool = True) -> SimpleLottery | KappaLottery:
    if check:
        _require_valid(tree, strategy)
    kappa = tree.mode is TreeMode.KAPPA
    results: dict[str, SimpleLottery | KappaLottery] = {}
    stack: list[tuple[str, bool]] = [(tree.root, False)]
    while stack:
        node_id, expanded = stack.pop()
        node = tree.nodes[node_id]
        if node.kind is NodeKind.LEAF:
            results[node_id] = leaf_lottery(tree, node_id)
        elif node.kind is NodeKind.DECISION:
            chosen = strategy.choice(node_id)
            if not expanded:
                stack.append((node_id, True))
                stack.append((chosen, False))
            else:
                results[node_id] = results.pop(chosen)
        elif not expanded:
            stack.append((node_id, True))
            stack.extend((e.child, False) for e in reversed(node.edges))
        else:
            pairs = [(e.weight, results.pop(e.child)) for e in node.edges]
            results[node_id] = reduce_kappa(pairs) if kappa else reduce_pairs(pairs)
    return results[tree.root]


def strategy_compound(tree: DecisionTree, strategy: Strategy) -> LotteryNode:
    """The strategy as an explicit nested compound lottery (possibilistic trees)."""
    if tree.mode is not TreeMode.POSSIBILISTIC:
        raise KindMismatchError("compound lotteries are built for possibilistic trees only")
    _require_valid(tree, strategy)
    built: dict[str, LotteryNode] = {}
    stack: list[tuple[str, bool]] = [(tree.root, False)]
    while stack:
        node_id, expanded = stack.pop()
        node = tree.nodes[node_id]
        if node.kind is NodeKind.LEAF:
            built[node_id] = leaf_lottery(tree, node_id)
        elif node.kind is NodeKind.DECISION:
            chosen = strategy.choice(node_id)
            if expanded:
                built[node_id] = built.pop(chosen)
            else:
                stack.extend([(node_id, True), (chosen, False)])
        elif expanded:
            built[node_id] = CompoundLottery(tuple((e.weight, built.pop(e.child)) for e in node.edges))
        else:
            stack.append((node_id, True))
            stack.extend((e.child, False) for e in node.edges)
    return built[tree.root]
