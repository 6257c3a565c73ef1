from __future__ import annotations

from math import prod
from typing import Iterator

from dtree.model import BOTTOM, DecisionTree, NodeKind, Strategy


def decisions_below(tree: DecisionTree, chance_id: str) -> tuple[str, ...]:
    return tuple(c for c in tree.children(chance_id) if tree.kind(c) is NodeKind.DECISION)


def enumerate_strategies(tree: DecisionTree) -> Iterator[Strategy]:
    """Lazy stream; each consumer needs its own iterator."""
    order = tree.decision_nodes()
    below = {c: decisions_below(tree, c) for c in tree.walk() if tree.kind(c) is NodeKind.CHANCE}
    stack: list[tuple[tuple[tuple[str, str], ...], tuple[str, ...]]] = [((), (tree.root,))]
    while stack:
        assigned, pending = stack.pop()
        if not pending:
            chosen = dict(assigned)
            yield Strategy({d: chosen.get(d, BOTTOM) for d in order})
            continue
        head, rest = pending[0], pending[1:]
        for child in reversed(tree.children(head)):
            stack.append((assigned + ((head, child),), below[child] + rest))


def count_strategies(tree: DecisionTree) -> int:
    """Closed form: sum over choices of the product of the sub-counts they reach."""
    counts: dict[str, int] = {}
    for d in reversed(tree.decision_nodes()):
        counts[d] = sum(prod(counts[x] for x in decisions_below(tree, c)) for c in tree.children(d))
    return counts[tree.root]
