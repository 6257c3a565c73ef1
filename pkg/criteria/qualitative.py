from __future__ import annotations

from fractions import Fraction

from errors import KindMismatchError, ScaleError
from lottery.degrees import ONE, ZERO, Degree
from lottery.possibilistic import SimpleLottery, necessity_ge, possibility_ge


def check_unit_scale(lottery: SimpleLottery) -> None:
    for outcome, _ in lottery.items:
        if not isinstance(outcome, Fraction):
            raise KindMismatchError(f"qualitative utility needs scalar outcomes, got {outcome!r}")
        if outcome < ZERO or outcome > ONE:
            raise ScaleError(f"utility {outcome} outside the commensurate scale [0, 1]")


def u_pes(lottery: SimpleLottery) -> Degree:
    check_unit_scale(lottery)
    return max(min(u, necessity_ge(lottery, u)) for u in lottery.outcomes)


def u_opt(lottery: SimpleLottery) -> Degree:
    check_unit_scale(lottery)
    return max(min(u, possibility_ge(lottery, u)) for u in lottery.outcomes)
