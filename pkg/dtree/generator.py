from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from criteria.binary import BinaryUtility
from dtree.model import ChanceNode, DecisionNode, DecisionTree, Edge, LeafNode, TreeMode
from errors import PossibilisticError
from lottery.degrees import ONE, KAPPA_ZERO, KappaRank

LOGGER = logging.getLogger(__name__)


def tenths() -> tuple[Fraction, ...]:
    return tuple(Fraction(i, 10) for i in range(11))


@dataclass(slots=True)
class TreeProfile:
    depth: int = 2
    branching: int = 2
    mode: TreeMode = TreeMode.POSSIBILISTIC
    binary_leaves: bool = False
    fixed_branching: bool = True
    leaf_percent: int = 0
    max_decision_nodes: int | None = None
    utility_grid: tuple[Fraction, ...] = field(default_factory=tenths)
    degree_grid: tuple[Fraction, ...] = field(default_factory=tenths)
    kappa_grid: tuple[int, ...] = (0, 1, 2, 3)
    mu_grid: tuple[int, ...] = (0, 1, 2, 3, 4, 5)

    def check(self) -> None:
        if self.depth < 1 or self.branching < 1:
            raise PossibilisticError(f"degenerate profile: depth={self.depth} branching={self.branching}")
        if not 0 <= self.leaf_percent <= 100:
            raise PossibilisticError(f"leaf_percent {self.leaf_percent} outside [0, 100]")
        if self.max_decision_nodes is not None and self.max_decision_nodes < 1:
            raise PossibilisticError("max_decision_nodes must allow the root")
        if not self.utility_grid or not self.degree_grid or not self.kappa_grid or not self.mu_grid:
            raise PossibilisticError("degenerate profile: empty grid")


class _Builder:
    def __init__(self, rng: np.random.Generator, profile: TreeProfile) -> None:
        self.rng = rng
        self.profile = profile
        self.nodes: dict[str, object] = {}
        self.counters = {"D": 0, "C": 0, "L": 0}

    def new_id(self, prefix: str) -> str:
        node_id = f"{prefix}{self.counters[prefix]}"
        self.counters[prefix] += 1
        return node_id

    def pick(self, grid):
        return grid[int(self.rng.integers(len(grid)))]

    def arity(self) -> int:
        if self.profile.fixed_branching:
            return self.profile.branching
        return int(self.rng.integers(1, self.profile.branching + 1))

    def weights(self, k: int) -> list:
        forced = int(self.rng.integers(k))
        if self.profile.mode is TreeMode.KAPPA:
            drawn = [KappaRank(self.pick(self.profile.kappa_grid)) for _ in range(k)]
            drawn[forced] = KAPPA_ZERO
        else:
            drawn = [self.pick(self.profile.degree_grid) for _ in range(k)]
            drawn[forced] = ONE
        return drawn

    def leaf_payload(self):
        if self.profile.mode is TreeMode.KAPPA:
            return KappaRank(self.pick(self.profile.mu_grid))
        if self.profile.binary_leaves:
            g = self.pick(self.profile.degree_grid)
            return BinaryUtility(ONE, g) if self.rng.integers(2) else BinaryUtility(g, ONE)
        return self.pick(self.profile.utility_grid)


def random_tree(seed: int, profile: TreeProfile | None = None) -> DecisionTree:
    """Deterministic in ``seed``; the output always passes ``validate_tree``."""
    profile = profile or TreeProfile()
    profile.check()
    b = _Builder(np.random.default_rng(seed), profile)
    root = b.new_id("D")
    decisions = 1
    queue: deque[tuple[str, int]] = deque([(root, 1)])
    # breadth-first so that labels follow the temporal order
    while queue:
        decision_id, stage = queue.popleft()
        chance_ids = [b.new_id("C") for _ in range(b.arity())]
        b.nodes[decision_id] = DecisionNode(tuple(chance_ids))
        for chance_id in chance_ids:
            k = b.arity()
            edges: list[Edge] = []
            for weight in b.weights(k):
                leaf = (
                    stage >= profile.depth
                    or (profile.leaf_percent and int(b.rng.integers(100)) < profile.leaf_percent)
                    or (profile.max_decision_nodes is not None and decisions >= profile.max_decision_nodes)
                )
                if leaf:
                    child = b.new_id("L")
                    b.nodes[child] = LeafNode(b.leaf_payload())
                else:
                    child = b.new_id("D")
                    decisions += 1
                    queue.append((child, stage + 1))
                edges.append(Edge(child, weight))
            b.nodes[chance_id] = ChanceNode(tuple(edges))
    LOGGER.debug("generated tree seed=%d decisions=%d nodes=%d", seed, decisions, len(b.nodes))
    return DecisionTree(dict(b.nodes), root, profile.mode)
