from __future__ import annotations

from fractions import Fraction

import pytest

from criteria.compare import compare
from criteria.schemas import CHOQUET, Capacity, CriterionId, PreferenceResult
from dtree.generator import TreeProfile, random_tree
from errors import KindMismatchError, PossibilisticError
from propcheck.dichotomy import ROWS, classify, dichotomy_report, oracle_profile
from propcheck.fuzz import fuzz_monotonicity, replay
from propcheck.gap import counterexample_tree, counterexample_trial, dp_gap, dp_oracle_check, find_dp_gap
from propcheck.pessimism import check_chn_pessimism, check_likely_dominance, check_pu_collapse
from propcheck.sampling import Sampler
from propcheck.scaling import scaling_report
from propcheck.trials import check_trial

SECOND = PreferenceResult.SECOND_STRICTLY_PREFERRED
MONOTONE_ROWS = [row for row in ROWS if row[0] not in CHOQUET]


@pytest.mark.parametrize("criterion", [CriterionId.CHN, CriterionId.CHPI])
def test_pinned_trials_break_choquet_criteria(criterion):
    violation = check_trial(counterexample_trial(criterion))
    assert violation is not None
    assert violation.premise is PreferenceResult.FIRST_STRICTLY_PREFERRED
    assert violation.outcome is SECOND


def test_choquet_necessity_violation_values():
    violation = check_trial(counterexample_trial(CriterionId.CHN))
    assert violation.left_value == Fraction(653, 1000)
    assert violation.right_value == Fraction(675, 1000)


def test_the_same_lotteries_do_not_break_the_qualitative_utilities():
    assert check_trial(counterexample_trial(CriterionId.CHN, as_criterion=CriterionId.UPES)) is None
    assert check_trial(counterexample_trial(CriterionId.CHN, as_criterion=CriterionId.UOPT)) is None


def test_no_pinned_trial_for_monotone_criteria():
    with pytest.raises(KindMismatchError):
        counterexample_trial(CriterionId.UPES)


def test_sampler_is_deterministic():
    a, b = Sampler(5), Sampler(5)
    assert [a.lottery() for _ in range(5)] == [b.lottery() for _ in range(5)]
    assert [a.kappa_lottery() for _ in range(5)] == [b.kappa_lottery() for _ in range(5)]


@pytest.mark.parametrize("criterion, embedding", MONOTONE_ROWS)
def test_monotone_criteria_survive_fuzzing(criterion, embedding):
    report = fuzz_monotonicity(criterion, 300, seed=1, embedding=embedding, symmetric=True)
    assert report.violations == 0
    assert report.first is None
    assert report.matches_expectation


def test_choquet_fuzzing_reports_the_pinned_trial_first():
    report = fuzz_monotonicity(CriterionId.CHN, 50, seed=1)
    assert report.pinned == 1
    assert report.first_index == 0
    assert report.violations >= 1
    assert report.matches_expectation
    assert replay(report.first.trial) == report.first
    summary = report.summary()
    assert summary["expected"] == "non-monotone"
    assert summary["matches"] is True


def test_fuzzing_is_reproducible():
    first = fuzz_monotonicity(CriterionId.CHPI, 200, seed=9, pinned=False)
    second = fuzz_monotonicity(CriterionId.CHPI, 200, seed=9, pinned=False)
    assert (first.violations, first.first_index, first.first) == (second.violations, second.first_index, second.first)


def test_fuzzing_needs_trials():
    with pytest.raises(PossibilisticError):
        fuzz_monotonicity(CriterionId.UPES, 0, seed=1)


def test_chn_is_pessimistic():
    report = check_chn_pessimism(500, seed=3)
    assert report.ok
    assert report.first is None


def test_pu_collapses_under_both_embeddings():
    assert check_pu_collapse(500, seed=4).ok


@pytest.mark.parametrize("mode", [Capacity.NECESSITY, Capacity.POSSIBILITY])
def test_likely_dominance_strict_part_is_transitive(mode):
    report = check_likely_dominance(mode, 200, seed=5)
    assert report.strict_failures == 0
    assert report.ok


@pytest.mark.parametrize("mode", [Capacity.NECESSITY, Capacity.POSSIBILITY])
def test_likely_dominance_indifference_is_not_transitive(mode):
    report = check_likely_dominance(mode, 2000, seed=5)
    assert report.strict_failures == 0
    assert report.intransitive_indifference > 0
    x, y, z = report.witness
    criterion = CriterionId.LN if mode is Capacity.NECESSITY else CriterionId.LPI
    assert compare(criterion, x, y) is PreferenceResult.INDIFFERENT
    assert compare(criterion, y, z) is PreferenceResult.INDIFFERENT
    assert compare(criterion, x, z) is PreferenceResult.FIRST_STRICTLY_PREFERRED


def test_dp_gap_on_the_pinned_tree():
    witness = dp_gap(counterexample_tree(CriterionId.CHN), CriterionId.CHN)
    assert witness is not None
    assert witness.gap == Fraction(11, 500)
    assert dp_gap(counterexample_tree(CriterionId.CHN), CriterionId.UPES) is None


def test_single_stage_trees_have_no_dp_gap():
    profile = TreeProfile(depth=1, branching=3, fixed_branching=False)
    assert find_dp_gap(CriterionId.CHN, 20, seed=0, profile=profile) is None


def test_gap_search_is_for_choquet_criteria_only():
    with pytest.raises(KindMismatchError):
        find_dp_gap(CriterionId.UPES, 5, seed=0)


@pytest.mark.parametrize("criterion, embedding", MONOTONE_ROWS)
def test_dp_is_never_beaten_for_monotone_criteria(criterion, embedding):
    report = dp_oracle_check(criterion, 20, seed=2, profile=oracle_profile(criterion, embedding), embedding=embedding)
    assert report.ok, report.beaten
    assert report.trees == 20


def test_oracle_trees_respect_the_decision_node_cap():
    profile = oracle_profile(CriterionId.UPES, max_decision_nodes=12)
    for seed in range(30):
        assert len(random_tree(seed, profile).decision_nodes()) <= 12


def test_scaling_rows():
    rows = scaling_report(range(1, 4), branching=2, seed=0)
    assert [r.decision_nodes for r in rows] == [1, 5, 21]
    assert [r.strategies for r in rows] == [2, 8, 128]
    assert all(r.linear and r.closed_form for r in rows)
    assert rows[-1].as_dict()["enumerated"] == 128


def test_scaling_skips_enumeration_over_the_limit():
    rows = scaling_report([3], branching=2, seed=0, enumerate_limit=100)
    assert rows[0].enumerated is None
    assert rows[0].closed_form


@pytest.mark.parametrize(
    "criterion, expected",
    [(CriterionId.UPES, "dp"), (CriterionId.OMEU, "dp"), (CriterionId.CHN, "hard"), (CriterionId.CHPI, "hard")],
)
def test_classification(criterion, expected):
    row = classify(criterion, None, trials=200, seed=1, trees=5)
    assert row.expected == expected
    assert row.observed == expected
    assert row.agrees


@pytest.mark.slow
def test_full_dichotomy_table():
    rows = dichotomy_report(trials=2000, seed=1, trees=30)
    assert len(rows) == len(ROWS)
    assert all(row.agrees for row in rows), [row.name for row in rows if not row.agrees]


@pytest.mark.slow
@pytest.mark.parametrize("criterion, embedding", MONOTONE_ROWS)
def test_monotone_criteria_survive_long_fuzzing(criterion, embedding):
    report = fuzz_monotonicity(criterion, 100_000, seed=0, embedding=embedding)
    assert report.violations == 0, report.first


@pytest.mark.slow
@pytest.mark.parametrize("criterion, embedding", MONOTONE_ROWS)
def test_dp_is_never_beaten_on_a_thousand_trees(criterion, embedding):
    profile = oracle_profile(criterion, embedding, max_decision_nodes=12)
    report = dp_oracle_check(criterion, 1000, seed=0, profile=profile, embedding=embedding)
    assert report.trees == 1000
    assert report.ok, report.beaten[:5]


@pytest.mark.slow
def test_chn_pessimism_at_scale():
    report = check_chn_pessimism(10_000, seed=0)
    assert report.ok, report.first


@pytest.mark.slow
def test_pu_collapse_at_scale():
    report = check_pu_collapse(10_000, seed=0)
    assert report.ok, report.first


@pytest.mark.slow
@pytest.mark.parametrize("criterion", [CriterionId.CHN, CriterionId.CHPI])
def test_random_search_finds_a_dp_gap(criterion):
    witness = find_dp_gap(criterion, 500, seed=0)
    assert witness is not None
    assert witness.gap > 0
    replayed = dp_gap(witness.tree, criterion)
    assert replayed is not None and replayed.gap == witness.gap
