from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from criteria.schemas import CriterionId
from dtree.enumeration import count_strategies, enumerate_strategies
from dtree.generator import TreeProfile, random_tree
from dtree.model import ChanceNode, DecisionNode, DecisionTree, Edge, LeafNode, NodeKind, Strategy, TreeMode
from dtree.reduction import strategy_compound, strategy_lottery
from dtree.validation import WARNING, errors_only, validate_strategy, validate_tree
from errors import StrategyError
from lottery.degrees import KAPPA_ZERO, KappaRank
from lottery.possibilistic import SimpleLottery, reduce

GREEDY = Strategy({"D0": "C0", "D1": "C1", "D2": "C3"})


def _tree(nodes: dict, root: str = "D0", mode: TreeMode = TreeMode.POSSIBILISTIC) -> DecisionTree:
    return DecisionTree(nodes, root, mode)


def _one_chance(edges: tuple[Edge, ...], leaves: dict) -> DecisionTree:
    return _tree({"D0": DecisionNode(("C0",)), "C0": ChanceNode(edges), **leaves})


def _rules(issues) -> set[str]:
    return {i.rule for i in issues}


def test_handcrafted_tree_is_valid(chn_tree):
    assert validate_tree(chn_tree, CriterionId.CHN) == []
    assert chn_tree.decision_nodes() == ["D0", "D1", "D2"]


def test_unnormalized_chance_node():
    tree = _one_chance(
        (Edge("L0", Fraction(9, 10)), Edge("L1", Fraction(1, 2))),
        {"L0": LeafNode(Fraction(0)), "L1": LeafNode(Fraction(1))},
    )
    assert "normalization" in _rules(validate_tree(tree))


def test_kappa_chance_node_needs_a_zero_rank():
    tree = _tree(
        {"D0": DecisionNode(("C0",)), "C0": ChanceNode((Edge("L0", KappaRank(1)),)), "L0": LeafNode(KappaRank(2))},
        mode=TreeMode.KAPPA,
    )
    assert "normalization" in _rules(validate_tree(tree))


def test_structural_rules():
    tree = _tree(
        {
            "D0": DecisionNode(("C0", "L9")),
            "C0": ChanceNode((Edge("L0", Fraction(1)), Edge("X", Fraction(1)))),
            "L0": LeafNode(Fraction(0)),
            "L9": LeafNode(Fraction(1)),
            "L5": LeafNode(Fraction(1)),
        }
    )
    rules = _rules(validate_tree(tree))
    assert {"succ-typing", "reference", "tree-shape"} <= rules


def test_root_must_be_a_decision():
    tree = _tree({"C0": ChanceNode((Edge("L0", Fraction(1)),)), "L0": LeafNode(Fraction(0))}, root="C0")
    assert "root-kind" in _rules(validate_tree(tree))


def test_missing_root():
    assert _rules(validate_tree(_tree({}, root="D0"))) == {"root"}


def test_criterion_checks_scale_and_kind():
    tree = _one_chance((Edge("L0", Fraction(1)),), {"L0": LeafNode(Fraction(2))})
    assert "scale" in _rules(validate_tree(tree, CriterionId.UPES))
    assert validate_tree(tree, CriterionId.CHN) == []
    assert "kind-mismatch" in _rules(validate_tree(tree, CriterionId.OMEU))


def test_temporal_labels_are_only_a_warning():
    tree = _tree(
        {
            "D2": DecisionNode(("C0",)),
            "C0": ChanceNode((Edge("D1", Fraction(1)),)),
            "D1": DecisionNode(("C1",)),
            "C1": ChanceNode((Edge("L0", Fraction(1)),)),
            "L0": LeafNode(Fraction(0)),
        },
        root="D2",
    )
    issues = validate_tree(tree)
    assert [i.rule for i in issues] == ["temporal-order"]
    assert issues[0].severity == WARNING
    assert errors_only(issues) == []


def test_strategy_validation(chn_tree):
    assert validate_strategy(chn_tree, GREEDY) == []
    assert _rules(validate_strategy(chn_tree, Strategy({"D0": None}))) == {"completeness"}
    assert _rules(validate_strategy(chn_tree, Strategy({"D0": "C0", "D1": "C3", "D2": "C3"}))) == {"soundness"}
    assert _rules(validate_strategy(chn_tree, Strategy({"D0": "C0", "D1": "C1", "D2": "C3", "D9": "C1"}))) == {
        "unknown-node"
    }
    missing = validate_strategy(chn_tree, Strategy({"D0": "C0", "D1": "C1"}))
    assert [(i.node, i.rule) for i in missing] == [("D2", "completeness")]


def test_strategy_lottery_of_the_greedy_strategy(chn_tree):
    assert strategy_lottery(chn_tree, GREEDY) == SimpleLottery.of({"0": "0.2", "0.51": "0.5", "1": "1"})


def test_invalid_strategy_is_refused(chn_tree):
    with pytest.raises(StrategyError):
        strategy_lottery(chn_tree, Strategy({"D0": "C0"}))


def test_enumeration_order_and_count(chn_tree):
    strategies = list(enumerate_strategies(chn_tree))
    assert [s.choice("D1") for s in strategies] == ["C1", "C2"]
    assert count_strategies(chn_tree) == 2


def test_count_matches_closed_form_on_a_full_binary_tree():
    tree = random_tree(3, TreeProfile(depth=2, branching=2))
    assert len(tree.decision_nodes()) == 5
    assert count_strategies(tree) == 8
    strategies = list(enumerate_strategies(tree))
    assert len(strategies) == 8
    assert len({s.key() for s in strategies}) == 8
    assert all(validate_strategy(tree, s) == [] for s in strategies)


def test_unreachable_decisions_stay_bottom():
    tree = random_tree(3, TreeProfile(depth=2, branching=2))
    for strategy in enumerate_strategies(tree):
        reachable = set(strategy.reachable_decisions(tree))
        for decision in tree.decision_nodes():
            assert (strategy.choice(decision) is None) == (decision not in reachable)


def test_generator_is_deterministic():
    profile = TreeProfile(depth=3, branching=3, fixed_branching=False, leaf_percent=30)
    assert random_tree(11, profile) == random_tree(11, profile)


def test_kappa_trees_have_a_zero_edge_everywhere():
    tree = random_tree(5, TreeProfile(depth=3, branching=2, mode=TreeMode.KAPPA))
    for node_id in tree.walk():
        node = tree.nodes[node_id]
        if node.kind is NodeKind.CHANCE:
            assert KAPPA_ZERO in [e.weight for e in node.edges]


def test_unknown_node_lookup(chn_tree):
    with pytest.raises(StrategyError):
        chn_tree.node("nope")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([TreeMode.POSSIBILISTIC, TreeMode.KAPPA]), st.booleans())
def test_generated_trees_are_valid(seed, mode, binary):
    profile = TreeProfile(depth=3, branching=3, mode=mode, binary_leaves=binary, fixed_branching=False, leaf_percent=40)
    assert errors_only(validate_tree(random_tree(seed, profile))) == []


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_compound_reduction_matches_direct_reduction(seed):
    tree = random_tree(seed, TreeProfile(depth=2, branching=2, fixed_branching=False))
    for strategy in enumerate_strategies(tree):
        assert reduce(strategy_compound(tree, strategy)) == strategy_lottery(tree, strategy)
