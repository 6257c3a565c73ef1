from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

from errors import PossibilisticError, ScaleError

Degree = Fraction
Utility = Fraction
RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(value: RationalLike) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise PossibilisticError(f"refusing inexact value {value!r}; use a decimal or fraction string")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise PossibilisticError(f"not a rational number: {value!r}") from exc
    raise PossibilisticError(f"unsupported rational value {value!r}")


def as_degree(value: RationalLike) -> Degree:
    d = parse_rational(value)
    if d < 0 or d > 1:
        raise ScaleError(f"possibility degree {d} outside [0, 1]")
    return d


def as_utility(value: RationalLike) -> Utility:
    u = parse_rational(value)
    if u < 0:
        raise ScaleError(f"utility {u} is negative")
    return u


def is_terminating(value: Fraction) -> bool:
    q = value.denominator
    for p in (2, 5):
        while q % p == 0:
            q //= p
    return q == 1


def format_rational(value: Fraction) -> str:
    """Shortest exact decimal when one exists, ``p/q`` otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    if not is_terminating(value):
        return f"{value.numerator}/{value.denominator}"
    sign = "-" if value < 0 else ""
    scaled = abs(value)
    digits = 0
    while scaled.denominator != 1:
        scaled *= 10
        digits += 1
    whole = str(scaled.numerator).rjust(digits + 1, "0")
    return f"{sign}{whole[:-digits]}.{whole[-digits:]}"


def format_fraction(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@total_ordering
@dataclass(frozen=True, slots=True)
class KappaRank:
    """Extended non-negative integer; ``INFINITY`` is a sentinel, not a big int."""

    value: int = 0
    infinite: bool = False

    def __post_init__(self) -> None:
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise PossibilisticError(f"kappa rank must be an integer, got {self.value!r}")
        if self.infinite:
            object.__setattr__(self, "value", 0)
        elif self.value < 0:
            raise ScaleError(f"kappa rank {self.value} is negative")

    @classmethod
    def parse(cls, value: int | str | KappaRank) -> KappaRank:
        if isinstance(value, KappaRank):
            return value
        if isinstance(value, str):
            text = value.strip().lower()
            if text in {"inf", "infinity", "+inf"}:
                return INFINITY
            try:
                return cls(int(text))
            except ValueError as exc:
                raise PossibilisticError(f"not a kappa rank: {value!r}") from exc
        return cls(value)

    def __add__(self, other: KappaRank) -> KappaRank:
        if self.infinite or other.infinite:
            return INFINITY
        return KappaRank(self.value + other.value)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, KappaRank):
            return NotImplemented
        if self.infinite:
            return False
        if other.infinite:
            return True
        return self.value < other.value

    def sort_key(self) -> KappaRank:
        return self

    def __str__(self) -> str:
        return "inf" if self.infinite else str(self.value)


INFINITY = KappaRank(0, infinite=True)
KAPPA_ZERO = KappaRank(0)
