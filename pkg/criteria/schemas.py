from __future__ import annotations

from enum import Enum


class CriterionId(str, Enum):
    UPES = "upes"
    UOPT = "uopt"
    PU = "pu"
    LN = "ln"
    LPI = "lpi"
    CHN = "chn"
    CHPI = "chpi"
    OMEU = "omeu"


class PreferenceResult(str, Enum):
    FIRST_STRICTLY_PREFERRED = "first"
    SECOND_STRICTLY_PREFERRED = "second"
    INDIFFERENT = "indifferent"


class Embedding(str, Enum):
    OPTIMISTIC = "optimistic"
    PESSIMISTIC = "pessimistic"


class Capacity(str, Enum):
    NECESSITY = "necessity"
    POSSIBILITY = "possibility"


# weakly monotone criteria are solved by dynamic programming
WEAKLY_MONOTONE = frozenset(
    {CriterionId.UPES, CriterionId.UOPT, CriterionId.PU, CriterionId.LN, CriterionId.LPI, CriterionId.OMEU}
)
PAIRWISE_ONLY = frozenset({CriterionId.LN, CriterionId.LPI})
CHOQUET = frozenset({CriterionId.CHN, CriterionId.CHPI})


def is_weakly_monotone(criterion: CriterionId) -> bool:
    return criterion in WEAKLY_MONOTONE


def by_value(first, second, higher_is_better: bool = True) -> PreferenceResult:
    if first == second:
        return PreferenceResult.INDIFFERENT
    better = first > second if higher_is_better else first < second
    return PreferenceResult.FIRST_STRICTLY_PREFERRED if better else PreferenceResult.SECOND_STRICTLY_PREFERRED
