from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from criteria.schemas import Capacity
from errors import KindMismatchError, ScaleError
from lottery.degrees import ZERO
from lottery.possibilistic import SimpleLottery, necessity_ge, possibility_ge

Exceedance = Callable[[Fraction], Fraction]


def telescoping_sum(utilities: Sequence[Fraction], exceedance: Exceedance) -> Fraction:
    total = ZERO
    previous = ZERO
    for u in utilities:
        total += (u - previous) * exceedance(u)
        previous = u
    return total


def choquet(lottery: SimpleLottery, capacity: Capacity) -> Fraction:
    if not lottery.is_scalar:
        raise KindMismatchError("Choquet integrals need scalar utilities")
    utilities = lottery.outcomes
    if utilities[0] < 0:
        raise ScaleError(f"Choquet integrals need non-negative utilities, got {utilities[0]}")
    measure = necessity_ge if capacity is Capacity.NECESSITY else possibility_ge
    return telescoping_sum(utilities, lambda u: measure(lottery, u))
