from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from criteria.binary import BinaryUtility
from lottery.degrees import KAPPA_ZERO, ONE, ZERO, KappaRank
from lottery.kappa import KappaLottery
from lottery.possibilistic import SimpleLottery

# Counter-example constants are part of the default grid.
PINNED_DEGREES = (Fraction(49, 100), Fraction(51, 100), Fraction(55, 100), Fraction(6, 10))


def default_degrees() -> tuple[Fraction, ...]:
    base = {ZERO, Fraction(1, 100), *(Fraction(i, 10) for i in range(1, 11)), *PINNED_DEGREES}
    return tuple(sorted(base))


def default_utilities() -> tuple[Fraction, ...]:
    return tuple(sorted({*(Fraction(i, 10) for i in range(11)), Fraction(51, 100)}))


@dataclass(slots=True)
class SamplingGrid:
    degrees: tuple[Fraction, ...] = field(default_factory=default_degrees)
    utilities: tuple[Fraction, ...] = field(default_factory=default_utilities)
    kappas: tuple[int, ...] = (0, 1, 2, 3)
    mus: tuple[int, ...] = (0, 1, 2, 3, 4, 5)
    max_support: int = 5

    @property
    def positive_degrees(self) -> tuple[Fraction, ...]:
        return tuple(d for d in self.degrees if d > 0)

    def binary_utilities(self) -> tuple[BinaryUtility, ...]:
        uppers = [BinaryUtility(ONE, d) for d in self.degrees]
        lowers = [BinaryUtility(d, ONE) for d in self.degrees if d < 1]
        return tuple(uppers + lowers)


class Sampler:
    def __init__(self, seed: int, grid: SamplingGrid | None = None) -> None:
        self.rng = np.random.default_rng(seed)
        self.grid = grid or SamplingGrid()

    def pick(self, grid):
        return grid[int(self.rng.integers(len(grid)))]

    def _support(self, outcomes) -> list:
        k = int(self.rng.integers(1, min(self.grid.max_support, len(outcomes)) + 1))
        return [outcomes[int(i)] for i in sorted(self.rng.choice(len(outcomes), size=k, replace=False))]

    def lottery(self, outcomes=None) -> SimpleLottery:
        support = self._support(outcomes if outcomes is not None else self.grid.utilities)
        degrees = [self.pick(self.grid.positive_degrees) for _ in support]
        degrees[int(self.rng.integers(len(support)))] = ONE
        return SimpleLottery(tuple(zip(support, degrees)))

    def binary_lottery(self) -> SimpleLottery:
        return self.lottery(self.grid.binary_utilities())

    def kappa_lottery(self) -> KappaLottery:
        support = self._support([KappaRank(m) for m in self.grid.mus])
        ranks = [KappaRank(self.pick(self.grid.kappas)) for _ in support]
        ranks[int(self.rng.integers(len(support)))] = KAPPA_ZERO
        return KappaLottery(tuple(zip(support, ranks)))

    def weights(self) -> tuple[Fraction, Fraction]:
        """(alpha, beta) with max(alpha, beta) = 1."""
        other = self.pick(self.grid.degrees)
        return (ONE, other) if self.rng.integers(2) else (other, ONE)

    def kappa_weights(self) -> tuple[KappaRank, KappaRank]:
        """(alpha, beta) with min(alpha, beta) = 0."""
        other = KappaRank(self.pick(self.grid.kappas))
        return (KAPPA_ZERO, other) if self.rng.integers(2) else (other, KAPPA_ZERO)
