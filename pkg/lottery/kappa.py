from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from errors import NormalizationError, PossibilisticError
from lottery.degrees import INFINITY, KAPPA_ZERO, KappaRank


@dataclass(frozen=True, slots=True)
class KappaLottery:
    items: tuple[tuple[KappaRank, KappaRank], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        seen: dict[KappaRank, KappaRank] = {}
        for mu, kappa in self.items:
            if mu in seen:
                raise PossibilisticError(f"duplicate dissatisfaction rank {mu} in kappa lottery")
            if kappa.infinite:
                raise NormalizationError(f"support entry {mu} has infinite disbelief")
            seen[mu] = kappa
        if not seen:
            raise NormalizationError("a kappa lottery needs a non-empty support")
        if min(seen.values()) != KAPPA_ZERO:
            raise NormalizationError(f"kappa lottery violates S1: min rank {min(seen.values())}")
        object.__setattr__(self, "items", tuple(sorted(self.items)))
        object.__setattr__(self, "_index", seen)

    @classmethod
    def of(cls, mapping: Mapping[int | str | KappaRank, int | str | KappaRank]) -> KappaLottery:
        """Build from ``{mu: kappa}``; entries with infinite kappa are dropped."""
        entries: dict[KappaRank, KappaRank] = {}
        for raw_mu, raw_kappa in mapping.items():
            mu, kappa = KappaRank.parse(raw_mu), KappaRank.parse(raw_kappa)
            if mu in entries:
                raise PossibilisticError(f"duplicate dissatisfaction rank {mu} in kappa lottery")
            if not kappa.infinite:
                entries[mu] = kappa
        return cls(tuple(entries.items()))

    @classmethod
    def certain(cls, mu: int | str | KappaRank) -> KappaLottery:
        return cls(((KappaRank.parse(mu), KAPPA_ZERO),))

    def rank(self, mu: KappaRank) -> KappaRank:
        return self._index.get(mu, INFINITY)

    @property
    def outcomes(self) -> tuple[KappaRank, ...]:
        return tuple(mu for mu, _ in self.items)

    def __iter__(self) -> Iterator[tuple[KappaRank, KappaRank]]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)


def min_sum(branches: Iterable[tuple[KappaRank, KappaLottery]]) -> dict[KappaRank, KappaRank]:
    acc: dict[KappaRank, KappaRank] = {}
    for weight, lottery in branches:
        if weight.infinite:
            continue
        for mu, kappa in lottery.items:
            k = weight + kappa
            if k < acc.get(mu, INFINITY):
                acc[mu] = k
    return acc


def reduce_kappa(branches: Iterable[tuple[KappaRank, KappaLottery]]) -> KappaLottery:
    """Min over branches of (branch rank + entry rank), saturating at infinity."""
    pairs = list(branches)
    if not pairs:
        raise NormalizationError("nothing to reduce")
    if min(k for k, _ in pairs) != KAPPA_ZERO:
        raise NormalizationError("kappa compound violates S1: no branch has rank 0")
    return KappaLottery(tuple(min_sum(pairs).items()))
