from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Mapping, Union

from criteria.binary import BinaryUtility
from errors import StrategyError
from lottery.degrees import KappaRank
from lottery.possibilistic import outcome_sort_key

NodeId = str
BOTTOM = None


class TreeMode(str, Enum):
    POSSIBILISTIC = "possibilistic"
    KAPPA = "kappa"


class NodeKind(str, Enum):
    DECISION = "decision"
    CHANCE = "chance"
    LEAF = "leaf"


@dataclass(frozen=True, slots=True)
class DecisionNode:
    children: tuple[NodeId, ...]

    kind = NodeKind.DECISION


@dataclass(frozen=True, slots=True)
class Edge:
    child: NodeId
    weight: Union[Fraction, KappaRank]


@dataclass(frozen=True, slots=True)
class ChanceNode:
    edges: tuple[Edge, ...]

    kind = NodeKind.CHANCE

    @property
    def children(self) -> tuple[NodeId, ...]:
        return tuple(e.child for e in self.edges)


Payload = Union[Fraction, BinaryUtility, KappaRank]


@dataclass(frozen=True, slots=True)
class LeafNode:
    payload: Payload

    kind = NodeKind.LEAF

    @property
    def children(self) -> tuple[NodeId, ...]:
        return ()


Node = Union[DecisionNode, ChanceNode, LeafNode]


@dataclass(frozen=True, slots=True)
class DecisionTree:
    nodes: Mapping[NodeId, Node]
    root: NodeId
    mode: TreeMode = TreeMode.POSSIBILISTIC

    def node(self, node_id: NodeId) -> Node:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise StrategyError(f"unknown node id {node_id!r}") from None

    def kind(self, node_id: NodeId) -> NodeKind:
        return self.node(node_id).kind

    def children(self, node_id: NodeId) -> tuple[NodeId, ...]:
        return self.node(node_id).children

    def walk(self, start: NodeId | None = None) -> Iterator[NodeId]:
        """Pre-order, children in declared order, no recursion."""
        stack = [self.root if start is None else start]
        seen: set[NodeId] = set()
        while stack:
            node_id = stack.pop()
            if node_id in seen or node_id not in self.nodes:
                continue
            seen.add(node_id)
            yield node_id
            stack.extend(reversed(self.nodes[node_id].children))

    def decision_nodes(self) -> list[NodeId]:
        return [n for n in self.walk() if self.nodes[n].kind is NodeKind.DECISION]

    def edge_count(self) -> int:
        return sum(len(self.nodes[n].children) for n in self.walk())

    def leaf_payloads(self) -> list[Payload]:
        distinct = {self.nodes[n].payload for n in self.walk() if self.nodes[n].kind is NodeKind.LEAF}
        return sorted(distinct, key=outcome_sort_key)


@dataclass(frozen=True, slots=True)
class Strategy:
    """Decision node -> chosen chance node, or BOTTOM (None)."""

    choices: Mapping[NodeId, NodeId | None] = field(default_factory=dict)

    def choice(self, node_id: NodeId) -> NodeId | None:
        return self.choices.get(node_id, BOTTOM)

    def key(self) -> tuple[tuple[NodeId, str], ...]:
        return tuple(sorted((d, c) for d, c in self.choices.items() if c is not None))

    def reachable_decisions(self, tree: DecisionTree) -> list[NodeId]:
        """Decision nodes met when the strategy is applied from the root."""
        out: list[NodeId] = []
        stack = [tree.root]
        while stack:
            node_id = stack.pop()
            node = tree.nodes.get(node_id)
            if node is None:
                continue
            if node.kind is NodeKind.DECISION:
                out.append(node_id)
                chosen = self.choice(node_id)
                if chosen is not None:
                    stack.append(chosen)
            elif node.kind is NodeKind.CHANCE:
                stack.extend(reversed(node.children))
        return out


def canonical_strategy(tree: DecisionTree, strategy: Strategy) -> Strategy:
    """Same strategy with BOTTOM on every decision node it never reaches."""
    reachable = set(strategy.reachable_decisions(tree))
    return Strategy({d: strategy.choice(d) if d in reachable else BOTTOM for d in tree.decision_nodes()})
