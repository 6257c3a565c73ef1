from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Iterator, Mapping, Union

from errors import KindMismatchError, NormalizationError, PossibilisticError
from lottery.degrees import ONE, ZERO, Degree, RationalLike, as_degree, as_utility

Outcome = Hashable


def outcome_sort_key(outcome: Outcome) -> Any:
    if isinstance(outcome, Fraction):
        return outcome
    return outcome.sort_key()


def _coerce_outcome(outcome: Any) -> Outcome:
    if isinstance(outcome, (int, str)) and not isinstance(outcome, bool):
        return as_utility(outcome)
    return outcome


@dataclass(frozen=True, slots=True)
class SimpleLottery:
    items: tuple[tuple[Outcome, Degree], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not self.items:
            raise NormalizationError("a lottery needs a non-empty support")
        seen: dict[Outcome, Degree] = {}
        for outcome, degree in self.items:
            if outcome in seen:
                raise PossibilisticError(f"duplicate outcome {outcome} in lottery")
            if not isinstance(degree, Fraction) or degree <= 0 or degree > 1:
                raise NormalizationError(f"support degree {degree!r} for {outcome} must lie in (0, 1]")
            seen[outcome] = degree
        if max(seen.values()) != ONE:
            raise NormalizationError(f"lottery is not normalized: max degree {max(seen.values())}")
        try:
            ordered = tuple(sorted(self.items, key=lambda kv: outcome_sort_key(kv[0])))
        except (TypeError, AttributeError) as exc:
            raise KindMismatchError("lottery mixes incomparable outcome kinds") from exc
        object.__setattr__(self, "items", ordered)
        object.__setattr__(self, "_index", seen)

    @classmethod
    def of(cls, mapping: Mapping[Any, RationalLike]) -> SimpleLottery:
        """Build from ``{outcome: degree}``; zero degrees are dropped."""
        entries: dict[Outcome, Degree] = {}
        for raw_outcome, raw_degree in mapping.items():
            outcome = _coerce_outcome(raw_outcome)
            degree = as_degree(raw_degree)
            if outcome in entries:
                raise PossibilisticError(f"duplicate outcome {outcome} in lottery")
            if degree > 0:
                entries[outcome] = degree
        return cls(tuple(entries.items()))

    @classmethod
    def certain(cls, outcome: Any) -> SimpleLottery:
        return cls(((_coerce_outcome(outcome), ONE),))

    def degree(self, outcome: Outcome) -> Degree:
        return self._index.get(outcome, ZERO)

    @property
    def outcomes(self) -> tuple[Outcome, ...]:
        return tuple(o for o, _ in self.items)

    @property
    def is_scalar(self) -> bool:
        return all(isinstance(o, Fraction) for o, _ in self.items)

    @property
    def support_max(self) -> Outcome:
        return self.items[-1][0]

    def as_dict(self) -> dict[Outcome, Degree]:
        return dict(self._index)

    def __iter__(self) -> Iterator[tuple[Outcome, Degree]]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True, slots=True)
class CompoundLottery:
    branches: tuple[tuple[Degree, LotteryNode], ...]

    def __post_init__(self) -> None:
        if not self.branches:
            raise NormalizationError("a compound lottery needs at least one branch")
        for degree, node in self.branches:
            if not isinstance(degree, Fraction) or degree < 0 or degree > 1:
                raise NormalizationError(f"branch degree {degree!r} outside [0, 1]")
            if not isinstance(node, (SimpleLottery, CompoundLottery)):
                raise PossibilisticError(f"branch must hold a lottery, got {type(node).__name__}")
        if max(d for d, _ in self.branches) != ONE:
            raise NormalizationError("compound lottery is not normalized: no branch has degree 1")

    @classmethod
    def of(cls, branches: Iterable[tuple[RationalLike, LotteryNode]]) -> CompoundLottery:
        return cls(tuple((as_degree(d), node) for d, node in branches))

    def size(self) -> int:
        total = 0
        stack: list[LotteryNode] = [self]
        while stack:
            node = stack.pop()
            if isinstance(node, SimpleLottery):
                total += len(node)
            else:
                total += len(node.branches)
                stack.extend(child for _, child in node.branches)
        return total


LotteryNode = Union[SimpleLottery, CompoundLottery]


def possibility_ge(lottery: SimpleLottery, threshold: Outcome) -> Degree:
    """Pi(L >= threshold)."""
    key = outcome_sort_key(threshold)
    return max((d for o, d in lottery.items if outcome_sort_key(o) >= key), default=ZERO)


def necessity_ge(lottery: SimpleLottery, threshold: Outcome) -> Degree:
    """N(L >= threshold) = 1 - Pi(L < threshold)."""
    key = outcome_sort_key(threshold)
    below = max((d for o, d in lottery.items if outcome_sort_key(o) < key), default=ZERO)
    return ONE - below


def max_min(branches: Iterable[tuple[Degree, SimpleLottery]]) -> dict[Outcome, Degree]:
    """Unnormalized max-of-mins accumulation over one compounding level."""
    acc: dict[Outcome, Degree] = {}
    for weight, lottery in branches:
        if weight <= 0:
            continue
        for outcome, degree in lottery.items:
            d = min(weight, degree)
            if d > acc.get(outcome, ZERO):
                acc[outcome] = d
    return acc


def reduce_pairs(branches: Iterable[tuple[Degree, SimpleLottery]]) -> SimpleLottery:
    pairs = list(branches)
    if not pairs:
        raise NormalizationError("nothing to reduce")
    if max(d for d, _ in pairs) != ONE:
        raise NormalizationError("compound lottery is not normalized: no branch has degree 1")
    return SimpleLottery(tuple(max_min(pairs).items()))


def reduce(compound: LotteryNode) -> SimpleLottery:
    """Flatten a compound lottery bottom-up without recursion."""
    if isinstance(compound, SimpleLottery):
        return compound
    results: list[SimpleLottery] = []
    stack: list[tuple[LotteryNode, bool]] = [(compound, False)]
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, SimpleLottery):
            results.append(node)
            continue
        if not expanded:
            stack.append((node, True))
            for _, child in reversed(node.branches):
                stack.append((child, False))
            continue
        k = len(node.branches)
        children = results[-k:]
        del results[-k:]
        results.append(reduce_pairs(zip((d for d, _ in node.branches), children)))
    return results[0]
