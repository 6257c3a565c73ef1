from __future__ import annotations

from fractions import Fraction
from typing import Union

from criteria.binary import BinaryUtility, embed_lottery, pu_compare, pu_value
from criteria.choquet import choquet
from criteria.dominance import ld_compare
from criteria.omeu import omeu
from criteria.qualitative import u_opt, u_pes
from criteria.schemas import Capacity, CriterionId, Embedding, PreferenceResult, by_value
from errors import KindMismatchError
from lottery.degrees import KappaRank
from lottery.kappa import KappaLottery
from lottery.possibilistic import SimpleLottery

AnyLottery = Union[SimpleLottery, KappaLottery]
CriterionValue = Union[Fraction, BinaryUtility, KappaRank, None]


def check_kind(criterion: CriterionId, lottery: AnyLottery) -> None:
    if criterion is CriterionId.OMEU:
        if not isinstance(lottery, KappaLottery):
            raise KindMismatchError("OMEU evaluates kappa lotteries only")
    elif not isinstance(lottery, SimpleLottery):
        raise KindMismatchError(f"{criterion.value} evaluates possibilistic lotteries only")


def pu_of(lottery: SimpleLottery, embedding: Embedding | None) -> BinaryUtility:
    if lottery.is_scalar:
        if embedding is None:
            raise KindMismatchError("PU over scalar utilities needs an explicit embedding (optimistic or pessimistic)")
        return pu_value(embed_lottery(lottery, embedding))
    return pu_value(lottery)


def evaluate(criterion: CriterionId, lottery: AnyLottery, embedding: Embedding | None = None) -> CriterionValue:
    check_kind(criterion, lottery)
    if criterion is CriterionId.UPES:
        return u_pes(lottery)
    if criterion is CriterionId.UOPT:
        return u_opt(lottery)
    if criterion is CriterionId.PU:
        return pu_of(lottery, embedding)
    if criterion is CriterionId.CHN:
        return choquet(lottery, Capacity.NECESSITY)
    if criterion is CriterionId.CHPI:
        return choquet(lottery, Capacity.POSSIBILITY)
    if criterion is CriterionId.OMEU:
        return omeu(lottery)
    return None


def compare_values(criterion: CriterionId, first: CriterionValue, second: CriterionValue) -> PreferenceResult:
    if criterion is CriterionId.PU:
        return pu_compare(first, second)
    if criterion is CriterionId.OMEU:
        return by_value(first, second, higher_is_better=False)
    return by_value(first, second)


def compare(
    criterion: CriterionId,
    a: AnyLottery,
    b: AnyLottery,
    embedding: Embedding | None = None,
) -> PreferenceResult:
    check_kind(criterion, a)
    check_kind(criterion, b)
    if criterion is CriterionId.LN:
        return ld_compare(a, b, Capacity.NECESSITY)
    if criterion is CriterionId.LPI:
        return ld_compare(a, b, Capacity.POSSIBILITY)
    return compare_values(criterion, evaluate(criterion, a, embedding), evaluate(criterion, b, embedding))
