from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from criteria.binary import BinaryUtility
from criteria.schemas import CHOQUET, CriterionId
from dtree.model import ChanceNode, DecisionTree, NodeKind, Strategy, TreeMode
from errors import KindMismatchError, NormalizationError, PossibilisticError, ScaleError
from lottery.degrees import ONE, KAPPA_ZERO, KappaRank

LOGGER = logging.getLogger(__name__)

ERROR = "error"
WARNING = "warning"

_INDEX = re.compile(r"(\d+)$")


@dataclass(frozen=True, slots=True)
class Issue:
    node: str | None
    rule: str
    message: str
    severity: str = ERROR

    def __str__(self) -> str:
        where = self.node if self.node is not None else "-"
        return f"{self.severity}: {where}: {self.rule}: {self.message}"


def errors_only(issues: list[Issue]) -> list[Issue]:
    return [i for i in issues if i.severity == ERROR]


def _check_structure(tree: DecisionTree, issues: list[Issue]) -> None:
    parents: Counter[str] = Counter()
    for node_id, node in tree.nodes.items():
        if node.kind is NodeKind.DECISION and not node.children:
            issues.append(Issue(node_id, "arity", "decision node has no chance children"))
        if node.kind is NodeKind.CHANCE and not node.children:
            issues.append(Issue(node_id, "arity", "chance node has no outgoing edges"))
        for child in node.children:
            parents[child] += 1
            if child not in tree.nodes:
                issues.append(Issue(node_id, "reference", f"child {child!r} does not exist"))
                continue
            child_kind = tree.nodes[child].kind
            if node.kind is NodeKind.DECISION and child_kind is not NodeKind.CHANCE:
                issues.append(Issue(node_id, "succ-typing", f"decision child {child!r} is a {child_kind.value} node"))
            if node.kind is NodeKind.CHANCE and child_kind is NodeKind.CHANCE:
                issues.append(Issue(node_id, "succ-typing", f"chance child {child!r} is a chance node"))
    if parents[tree.root]:
        issues.append(Issue(tree.root, "tree-shape", "root has a parent (cycle through the root)"))
    for node_id, count in sorted(parents.items()):
        if count > 1:
            issues.append(Issue(node_id, "tree-shape", f"node has {count} parents"))
    reachable = set(tree.walk())
    for node_id in tree.nodes:
        if node_id not in reachable:
            issues.append(Issue(node_id, "tree-shape", "node is not reachable from the root"))


def _check_chance(tree: DecisionTree, node_id: str, node: ChanceNode, issues: list[Issue]) -> None:
    if not node.edges:
        return
    weights = [e.weight for e in node.edges]
    if tree.mode is TreeMode.POSSIBILISTIC:
        if not all(isinstance(w, Fraction) and 0 <= w <= 1 for w in weights):
            issues.append(Issue(node_id, "degree-range", "edge degrees must be rationals in [0, 1]"))
            return
        if max(weights) != ONE:
            issues.append(Issue(node_id, "normalization", f"max edge degree is {max(weights)}, expected 1"))
    else:
        if not all(isinstance(w, KappaRank) for w in weights):
            issues.append(Issue(node_id, "degree-range", "edge weights must be kappa ranks"))
            return
        if min(weights) != KAPPA_ZERO:
            issues.append(Issue(node_id, "normalization", f"min edge rank is {min(weights)}, expected 0"))


def _check_leaf(tree: DecisionTree, node_id: str, payload: object, issues: list[Issue]) -> None:
    if tree.mode is TreeMode.KAPPA:
        if not isinstance(payload, KappaRank):
            issues.append(Issue(node_id, "leaf-kind", "kappa trees need dissatisfaction ranks (mu) on leaves"))
        return
    if isinstance(payload, Fraction):
        if payload < 0:
            issues.append(Issue(node_id, "leaf-kind", f"utility {payload} is negative"))
    elif not isinstance(payload, BinaryUtility):
        issues.append(Issue(node_id, "leaf-kind", "possibilistic trees need utilities or binary utilities on leaves"))


def _check_temporal(tree: DecisionTree, issues: list[Issue]) -> None:
    # D_i below D_j should satisfy i > j; presentational only.
    stack: list[tuple[str, int | None]] = [(tree.root, None)]
    seen: set[str] = set()
    while stack:
        node_id, ancestor_index = stack.pop()
        if node_id in seen or node_id not in tree.nodes:
            continue
        seen.add(node_id)
        node = tree.nodes[node_id]
        if node.kind is NodeKind.DECISION:
            match = _INDEX.search(node_id)
            if match:
                index = int(match.group(1))
                if ancestor_index is not None and index <= ancestor_index:
                    issues.append(
                        Issue(node_id, "temporal-order", f"decision index {index} not after ancestor {ancestor_index}", WARNING)
                    )
                ancestor_index = index
        stack.extend((child, ancestor_index) for child in node.children)


def _check_criterion(tree: DecisionTree, criterion: CriterionId, issues: list[Issue]) -> None:
    if criterion is CriterionId.OMEU:
        if tree.mode is not TreeMode.KAPPA:
            issues.append(Issue(None, "kind-mismatch", "OMEU needs a kappa tree"))
        return
    if tree.mode is not TreeMode.POSSIBILISTIC:
        issues.append(Issue(None, "kind-mismatch", f"{criterion.value} needs a possibilistic tree"))
        return
    for node_id in tree.walk():
        node = tree.nodes[node_id]
        if node.kind is not NodeKind.LEAF:
            continue
        payload = node.payload
        if isinstance(payload, BinaryUtility):
            if criterion is not CriterionId.PU and criterion not in (CriterionId.LN, CriterionId.LPI):
                issues.append(Issue(node_id, "kind-mismatch", f"{criterion.value} needs scalar utilities"))
        elif isinstance(payload, Fraction):
            if criterion in (CriterionId.UPES, CriterionId.UOPT, CriterionId.PU) and payload > 1:
                issues.append(Issue(node_id, "scale", f"{criterion.value} needs utilities in [0, 1], got {payload}"))
        if criterion in CHOQUET and not isinstance(payload, Fraction):
            issues.append(Issue(node_id, "kind-mismatch", "Choquet criteria need scalar utilities"))


def validate_tree(tree: DecisionTree, criterion: CriterionId | None = None) -> list[Issue]:
    issues: list[Issue] = []
    if tree.root not in tree.nodes:
        return [Issue(tree.root, "root", "root node does not exist")]
    if tree.nodes[tree.root].kind is not NodeKind.DECISION:
        issues.append(Issue(tree.root, "root-kind", "root must be a decision node"))
    _check_structure(tree, issues)
    kinds: set[type] = set()
    for node_id, node in tree.nodes.items():
        if node.kind is NodeKind.CHANCE:
            _check_chance(tree, node_id, node, issues)
        elif node.kind is NodeKind.LEAF:
            _check_leaf(tree, node_id, node.payload, issues)
            kinds.add(type(node.payload))
    if len(kinds) > 1:
        issues.append(Issue(None, "leaf-kind", "leaves mix payload kinds"))
    if criterion is not None:
        _check_criterion(tree, criterion, issues)
    _check_temporal(tree, issues)
    return issues


def validate_strategy(tree: DecisionTree, strategy: Strategy) -> list[Issue]:
    issues: list[Issue] = []
    for decision, chosen in strategy.choices.items():
        if decision not in tree.nodes:
            issues.append(Issue(decision, "unknown-node", "strategy names a node that is not in the tree"))
            continue
        if tree.nodes[decision].kind is not NodeKind.DECISION:
            issues.append(Issue(decision, "soundness", "strategy assigns a non-decision node"))
            continue
        if chosen is not None and chosen not in tree.nodes[decision].children:
            issues.append(Issue(decision, "soundness", f"{chosen!r} is not a child of this decision node"))
    if issues:
        return issues
    if strategy.choice(tree.root) is None:
        return [Issue(tree.root, "completeness", "the root decision is BOTTOM")]
    for decision in strategy.reachable_decisions(tree):
        if strategy.choice(decision) is None:
            # report the first unassigned reachable decision only
            return [Issue(decision, "completeness", "reachable decision node is BOTTOM")]
    return issues


def require_valid_tree(tree: DecisionTree, criterion: CriterionId | None = None) -> None:
    """Raise the matching domain error for the first error-severity issue."""
    issues = validate_tree(tree, criterion)
    for issue in issues:
        if issue.severity == WARNING:
            LOGGER.warning("%s", issue)
    problems = errors_only(issues)
    if not problems:
        return
    first = problems[0]
    if first.rule in {"kind-mismatch", "leaf-kind"}:
        raise KindMismatchError(str(first))
    if first.rule == "scale":
        raise ScaleError(str(first))
    if first.rule == "normalization":
        raise NormalizationError(str(first))
    raise PossibilisticError(f"invalid tree: {first}")
