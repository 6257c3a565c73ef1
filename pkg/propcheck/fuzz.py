from __future__ import annotations

import logging
from dataclasses import dataclass

from criteria.schemas import CHOQUET, CriterionId, Embedding, is_weakly_monotone
from errors import PossibilisticError
from propcheck.gap import counterexample_trial
from propcheck.sampling import Sampler, SamplingGrid
from propcheck.trials import MonotonicityTrial, Violation, check_trial

LOGGER = logging.getLogger(__name__)


@dataclass(slots=True)
class FuzzReport:
    criterion: CriterionId
    trials: int
    seed: int
    embedding: Embedding | None = None
    symmetric: bool = False
    violations: int = 0
    first: Violation | None = None
    first_index: int | None = None
    pinned: int = 0

    @property
    def expected_monotone(self) -> bool:
        return is_weakly_monotone(self.criterion)

    @property
    def matches_expectation(self) -> bool:
        if self.expected_monotone:
            return self.violations == 0
        return self.violations > 0

    def summary(self) -> dict:
        return {
            "criterion": self.criterion.value,
            "embedding": self.embedding.value if self.embedding else None,
            "trials": self.trials,
            "seed": self.seed,
            "symmetric": self.symmetric,
            "violations": self.violations,
            "first_index": self.first_index,
            "expected": "monotone" if self.expected_monotone else "non-monotone",
            "matches": self.matches_expectation,
        }


def pinned_trials(criterion: CriterionId) -> list[MonotonicityTrial]:
    if criterion in CHOQUET:
        return [counterexample_trial(criterion)]
    return []


def sample_trial(
    sampler: Sampler,
    criterion: CriterionId,
    embedding: Embedding | None = None,
) -> MonotonicityTrial:
    if criterion is CriterionId.OMEU:
        lotteries = [sampler.kappa_lottery() for _ in range(3)]
        alpha, beta = sampler.kappa_weights()
    else:
        binary = criterion is CriterionId.PU and embedding is None
        draw = sampler.binary_lottery if binary else sampler.lottery
        lotteries = [draw() for _ in range(3)]
        alpha, beta = sampler.weights()
    return MonotonicityTrial(*lotteries, alpha, beta, criterion, embedding)


def fuzz_monotonicity(
    criterion: CriterionId,
    trials: int,
    seed: int,
    grid: SamplingGrid | None = None,
    symmetric: bool = False,
    embedding: Embedding | None = None,
    pinned: bool = True,
) -> FuzzReport:
    """Check ``trials`` sampled trials (after any pinned ones); deterministic in ``seed``."""
    if trials <= 0:
        raise PossibilisticError("trials must be positive")
    report = FuzzReport(criterion, trials, seed, embedding, symmetric)
    fixed = pinned_trials(criterion) if pinned else []
    report.pinned = len(fixed)
    sampler = Sampler(seed, grid)

    def generated():
        yield from fixed
        for _ in range(trials):
            yield sample_trial(sampler, criterion, embedding)

    for index, trial in enumerate(generated()):
        violation = check_trial(trial, symmetric=symmetric)
        if violation is None:
            continue
        report.violations += 1
        if report.first is None:
            report.first, report.first_index = violation, index
    LOGGER.info(
        "fuzz %s seed=%d trials=%d violations=%d", criterion.value, seed, trials, report.violations
    )
    return report


def replay(trial: MonotonicityTrial, symmetric: bool = False) -> Violation | None:
    """Re-run a recorded trial; a faithful witness reproduces its violation."""
    return check_trial(trial, symmetric=symmetric)
