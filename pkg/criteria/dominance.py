from __future__ import annotations

from criteria.schemas import Capacity, PreferenceResult, by_value
from lottery.degrees import ONE, ZERO, Degree
from lottery.possibilistic import SimpleLottery, outcome_sort_key


def _pi_joint(a: SimpleLottery, b: SimpleLottery, strict: bool) -> Degree:
    best = ZERO
    for u, du in a.items:
        ku = outcome_sort_key(u)
        for v, dv in b.items:
            kv = outcome_sort_key(v)
            if ku > kv or (not strict and ku == kv):
                best = max(best, min(du, dv))
    return best


def overtake_likelihood(a: SimpleLottery, b: SimpleLottery, mode: Capacity) -> Degree:
    """Pi(a >= b), or N(a >= b) = 1 - Pi(b > a)."""
    if mode is Capacity.POSSIBILITY:
        return _pi_joint(a, b, strict=False)
    return ONE - _pi_joint(b, a, strict=True)


def likelihoods(a: SimpleLottery, b: SimpleLottery, mode: Capacity) -> tuple[Degree, Degree]:
    return overtake_likelihood(a, b, mode), overtake_likelihood(b, a, mode)


def ld_compare(a: SimpleLottery, b: SimpleLottery, mode: Capacity) -> PreferenceResult:
    first, second = likelihoods(a, b, mode)
    return by_value(first, second)
