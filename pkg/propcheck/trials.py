"""Weak monotonicity trials.

A criterion is weakly monotonic when L >= L' implies
(alpha ^ L) v (beta ^ L'') >= (alpha ^ L') v (beta ^ L'') for every L'' and
every (alpha, beta) with max(alpha, beta) = 1 (min = 0 for kappa lotteries).
Dynamic programming is sound exactly for such criteria.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from criteria.compare import compare, evaluate
from criteria.dominance import likelihoods
from criteria.schemas import Capacity, CriterionId, Embedding, PreferenceResult
from errors import KindMismatchError, NormalizationError
from lottery.degrees import KAPPA_ZERO, ONE, KappaRank
from lottery.kappa import KappaLottery, reduce_kappa
from lottery.possibilistic import SimpleLottery, reduce_pairs

AnyLottery = Union[SimpleLottery, KappaLottery]


@dataclass(frozen=True, slots=True)
class MonotonicityTrial:
    L: AnyLottery
    Lp: AnyLottery
    Lpp: AnyLottery
    alpha: Union[Fraction, KappaRank]
    beta: Union[Fraction, KappaRank]
    criterion: CriterionId
    embedding: Embedding | None = None

    def __post_init__(self) -> None:
        kappa = self.criterion is CriterionId.OMEU
        lottery_type = KappaLottery if kappa else SimpleLottery
        if not all(isinstance(x, lottery_type) for x in (self.L, self.Lp, self.Lpp)):
            raise KindMismatchError(f"{self.criterion.value} trials need {lottery_type.__name__} operands")
        if kappa:
            if min(self.alpha, self.beta) != KAPPA_ZERO:
                raise NormalizationError("kappa trials need min(alpha, beta) = 0")
        elif max(self.alpha, self.beta) != ONE:
            raise NormalizationError("trials need max(alpha, beta) = 1")

    def composed(self) -> tuple[AnyLottery, AnyLottery]:
        reducer = reduce_kappa if self.criterion is CriterionId.OMEU else reduce_pairs
        left = reducer([(self.alpha, self.L), (self.beta, self.Lpp)])
        right = reducer([(self.alpha, self.Lp), (self.beta, self.Lpp)])
        return left, right


@dataclass(frozen=True, slots=True)
class Violation:
    trial: MonotonicityTrial
    premise: PreferenceResult
    outcome: PreferenceResult
    left_value: object
    right_value: object
    reversed_premise: bool = False


def _values(trial: MonotonicityTrial, left: AnyLottery, right: AnyLottery) -> tuple[object, object]:
    if trial.criterion is CriterionId.LN:
        return likelihoods(left, right, Capacity.NECESSITY)
    if trial.criterion is CriterionId.LPI:
        return likelihoods(left, right, Capacity.POSSIBILITY)
    return evaluate(trial.criterion, left, trial.embedding), evaluate(trial.criterion, right, trial.embedding)


def check_trial(trial: MonotonicityTrial, symmetric: bool = False) -> Violation | None:
    premise = compare(trial.criterion, trial.L, trial.Lp, trial.embedding)
    left, right = trial.composed()
    outcome = compare(trial.criterion, left, right, trial.embedding)
    broken = premise is not PreferenceResult.SECOND_STRICTLY_PREFERRED and outcome is PreferenceResult.SECOND_STRICTLY_PREFERRED
    flipped = (
        symmetric
        and premise is PreferenceResult.SECOND_STRICTLY_PREFERRED
        and outcome is PreferenceResult.FIRST_STRICTLY_PREFERRED
    )
    if not (broken or flipped):
        return None
    left_value, right_value = _values(trial, left, right)
    return Violation(trial, premise, outcome, left_value, right_value, reversed_premise=flipped)
