from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from criteria.choquet import choquet
from criteria.compare import compare
from criteria.schemas import Capacity, CriterionId, Embedding, PreferenceResult
from lottery.possibilistic import SimpleLottery, reduce_pairs
from lottery.degrees import ONE
from propcheck.sampling import Sampler, SamplingGrid

LOGGER = logging.getLogger(__name__)

FIRST = PreferenceResult.FIRST_STRICTLY_PREFERRED
SAME = PreferenceResult.INDIFFERENT


def integer_grid() -> SamplingGrid:
    return SamplingGrid(utilities=tuple(Fraction(i) for i in range(10)))


@dataclass(slots=True)
class PessimismReport:
    samples: int
    seed: int
    raise_failures: int = 0
    merge_failures: int = 0
    first: tuple[SimpleLottery, SimpleLottery] | None = None

    @property
    def ok(self) -> bool:
        return self.raise_failures == 0 and self.merge_failures == 0


def _raised(sampler: Sampler, lottery: SimpleLottery) -> SimpleLottery:
    ceiling = lottery.support_max
    u = sampler.pick([x for x in sampler.grid.utilities if x <= ceiling])
    current = lottery.degree(u)
    degree = sampler.pick([d for d in sampler.grid.positive_degrees if d >= current] or [ONE])
    entries = lottery.as_dict()
    entries[u] = degree
    return SimpleLottery(tuple(entries.items()))


def check_chn_pessimism(samples: int, seed: int, grid: SamplingGrid | None = None) -> PessimismReport:
    report = PessimismReport(samples, seed)
    sampler = Sampler(seed, grid or integer_grid())
    for _ in range(samples):
        base = sampler.lottery()
        raised = _raised(sampler, base)
        if choquet(raised, Capacity.NECESSITY) > choquet(base, Capacity.NECESSITY):
            report.raise_failures += 1
            report.first = report.first or (base, raised)

        other = sampler.lottery([u for u in sampler.grid.utilities if u <= base.support_max])
        merged = reduce_pairs([(ONE, base), (ONE, other)])
        if choquet(merged, Capacity.NECESSITY) > choquet(base, Capacity.NECESSITY):
            report.merge_failures += 1
            report.first = report.first or (base, merged)
    if not report.ok:
        LOGGER.error("Ch_N pessimism broken: %d/%d failures", report.raise_failures, report.merge_failures)
    return report


@dataclass(slots=True)
class CollapseReport:
    samples: int
    seed: int
    mismatches: dict[Embedding, int] = field(default_factory=lambda: {e: 0 for e in Embedding})
    first: tuple[SimpleLottery, SimpleLottery, Embedding] | None = None

    @property
    def ok(self) -> bool:
        return not any(self.mismatches.values())


_COLLAPSES_TO = {Embedding.PESSIMISTIC: CriterionId.UPES, Embedding.OPTIMISTIC: CriterionId.UOPT}


def check_pu_collapse(samples: int, seed: int, grid: SamplingGrid | None = None) -> CollapseReport:
    report = CollapseReport(samples, seed)
    sampler = Sampler(seed, grid)
    for _ in range(samples):
        a, b = sampler.lottery(), sampler.lottery()
        for embedding, criterion in _COLLAPSES_TO.items():
            if compare(CriterionId.PU, a, b, embedding) is not compare(criterion, a, b):
                report.mismatches[embedding] += 1
                report.first = report.first or (a, b, embedding)
    return report


@dataclass(slots=True)
class DominanceReport:
    mode: Capacity
    trials: int
    seed: int
    intransitive_indifference: int = 0
    strict_failures: int = 0
    witness: tuple[SimpleLottery, SimpleLottery, SimpleLottery] | None = None
    failure: tuple[SimpleLottery, SimpleLottery, SimpleLottery] | None = None

    @property
    def ok(self) -> bool:
        return self.strict_failures == 0


def check_likely_dominance(
    mode: Capacity,
    trials: int,
    seed: int,
    grid: SamplingGrid | None = None,
) -> DominanceReport:
    """Scan sampled triples in every order for the two quasitransitivity facts."""
    criterion = CriterionId.LN if mode is Capacity.NECESSITY else CriterionId.LPI
    report = DominanceReport(mode, trials, seed)
    sampler = Sampler(seed, grid)
    for _ in range(trials):
        triple = [sampler.lottery() for _ in range(3)]
        for x, y, z in permutations(triple):
            xy, yz, xz = compare(criterion, x, y), compare(criterion, y, z), compare(criterion, x, z)
            if xy is FIRST and yz is FIRST and xz is not FIRST:
                report.strict_failures += 1
                report.failure = report.failure or (x, y, z)
            if xy is SAME and yz is SAME and xz is FIRST:
                report.intransitive_indifference += 1
                report.witness = report.witness or (x, y, z)
    LOGGER.info(
        "likely dominance %s: %d intransitive indifferences, %d strict failures",
        mode.value,
        report.intransitive_indifference,
        report.strict_failures,
    )
    return report
