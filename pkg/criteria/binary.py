"""Binary possibilistic utility (PU).

A binary utility is a pair <top, bottom>: the possibility of the ideal reward
and of the anti-ideal one, with max(top, bottom) = 1. The total order on pairs
has three clauses: among pairs with top = 1 a smaller bottom is better, among
pairs with bottom = 1 a larger top is better, and any <1, b> with b < 1 beats
any <t, 1> with t < 1. <1, 1> sits between the two classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from criteria.schemas import Embedding, PreferenceResult
from errors import KindMismatchError, NormalizationError, ScaleError
from lottery.degrees import ONE, Degree, RationalLike, as_degree, format_rational
from lottery.possibilistic import SimpleLottery


@dataclass(frozen=True, slots=True)
class BinaryUtility:
    top: Degree
    bottom: Degree

    def __post_init__(self) -> None:
        for name in ("top", "bottom"):
            value = getattr(self, name)
            if not isinstance(value, Fraction) or value < 0 or value > 1:
                raise ScaleError(f"binary utility {name}={value!r} outside [0, 1]")
        if max(self.top, self.bottom) != ONE:
            raise NormalizationError(f"binary utility <{self.top}, {self.bottom}> has max below 1")

    @classmethod
    def of(cls, top: RationalLike, bottom: RationalLike) -> BinaryUtility:
        return cls(as_degree(top), as_degree(bottom))

    @property
    def score(self) -> Fraction:
        """top - bottom; the clause order above is exactly the order of this score."""
        return self.top - self.bottom

    def sort_key(self) -> Fraction:
        return self.score

    def __str__(self) -> str:
        return f"<{format_rational(self.top)}, {format_rational(self.bottom)}>"


def pu_compare(a: BinaryUtility, b: BinaryUtility) -> PreferenceResult:
    if a == b:
        return PreferenceResult.INDIFFERENT
    if a.top == ONE and b.top == ONE:
        better = a.bottom < b.bottom
    elif a.bottom == ONE and b.bottom == ONE:
        better = a.top > b.top
    else:
        # one upper-class pair (top = 1, bottom < 1) against one strict lower-class pair
        better = a.top == ONE
    return PreferenceResult.FIRST_STRICTLY_PREFERRED if better else PreferenceResult.SECOND_STRICTLY_PREFERRED


def embed_scalar(u: Any, mode: Embedding) -> BinaryUtility:
    value = as_degree(u)
    if mode is Embedding.OPTIMISTIC:
        return BinaryUtility(value, ONE)
    return BinaryUtility(ONE, ONE - value)


def embed_lottery(lottery: SimpleLottery, mode: Embedding) -> list[tuple[Degree, BinaryUtility]]:
    if not lottery.is_scalar:
        raise KindMismatchError("only scalar lotteries can be embedded into binary utilities")
    return [(degree, embed_scalar(u, mode)) for u, degree in lottery.items]


def pu_value(lottery: SimpleLottery | list[tuple[Degree, BinaryUtility]]) -> BinaryUtility:
    """Componentwise max-min reduction of a lottery over binary utilities."""
    pairs = [(d, o) for o, d in lottery.items] if isinstance(lottery, SimpleLottery) else list(lottery)
    if not pairs:
        raise NormalizationError("empty PU lottery")
    if max(d for d, _ in pairs) != ONE:
        raise NormalizationError("PU lottery is not normalized")
    for _, outcome in pairs:
        if not isinstance(outcome, BinaryUtility):
            raise KindMismatchError(f"PU needs binary-utility outcomes, got {outcome!r}; pass an embedding")
    top = max(min(d, o.top) for d, o in pairs)
    bottom = max(min(d, o.bottom) for d, o in pairs)
    return BinaryUtility(top, bottom)
