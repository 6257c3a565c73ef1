from __future__ import annotations

import logging
from dataclasses import dataclass

from criteria.schemas import CHOQUET, CriterionId, Embedding, is_weakly_monotone
from dtree.generator import TreeProfile
from dtree.model import TreeMode
from propcheck.fuzz import fuzz_monotonicity
from propcheck.gap import counterexample_tree, dp_gap, dp_oracle_check, find_dp_gap

LOGGER = logging.getLogger(__name__)

ROWS: tuple[tuple[CriterionId, Embedding | None], ...] = (
    (CriterionId.UPES, None),
    (CriterionId.UOPT, None),
    (CriterionId.PU, None),
    (CriterionId.PU, Embedding.OPTIMISTIC),
    (CriterionId.PU, Embedding.PESSIMISTIC),
    (CriterionId.LN, None),
    (CriterionId.LPI, None),
    (CriterionId.OMEU, None),
    (CriterionId.CHN, None),
    (CriterionId.CHPI, None),
)


def oracle_profile(criterion: CriterionId, embedding: Embedding | None = None, max_decision_nodes: int = 6) -> TreeProfile:
    return TreeProfile(
        depth=3,
        branching=3,
        mode=TreeMode.KAPPA if criterion is CriterionId.OMEU else TreeMode.POSSIBILISTIC,
        binary_leaves=criterion is CriterionId.PU and embedding is None,
        fixed_branching=False,
        leaf_percent=30,
        max_decision_nodes=max_decision_nodes,
    )


@dataclass(slots=True)
class DichotomyRow:
    criterion: CriterionId
    embedding: Embedding | None
    violations: int
    dp_exact: bool
    gap_witness: bool

    @property
    def name(self) -> str:
        return f"{self.criterion.value}/{self.embedding.value}" if self.embedding else self.criterion.value

    @property
    def expected(self) -> str:
        return "dp" if is_weakly_monotone(self.criterion) else "hard"

    @property
    def observed(self) -> str:
        if self.violations == 0 and self.dp_exact and not self.gap_witness:
            return "dp"
        if self.violations > 0 and self.gap_witness:
            return "hard"
        return "inconclusive"

    @property
    def agrees(self) -> bool:
        return self.expected == self.observed


def classify(
    criterion: CriterionId,
    embedding: Embedding | None,
    trials: int,
    seed: int,
    trees: int,
    search: int = 0,
) -> DichotomyRow:
    fuzz = fuzz_monotonicity(criterion, trials, seed, embedding=embedding)
    if criterion in CHOQUET:
        witness = dp_gap(counterexample_tree(criterion), criterion)
        if witness is None and search:
            witness = find_dp_gap(criterion, search, seed)
        gap = witness is not None
        return DichotomyRow(criterion, embedding, fuzz.violations, dp_exact=not gap, gap_witness=gap)
    oracle = dp_oracle_check(criterion, trees, seed, oracle_profile(criterion, embedding), embedding)
    return DichotomyRow(criterion, embedding, fuzz.violations, dp_exact=oracle.ok, gap_witness=not oracle.ok)


def dichotomy_report(trials: int, seed: int, trees: int = 50, search: int = 0) -> list[DichotomyRow]:
    rows = [classify(c, e, trials, seed, trees, search) for c, e in ROWS]
    for row in rows:
        if not row.agrees:
            LOGGER.warning("%s observed %s, expected %s", row.name, row.observed, row.expected)
    return rows
