"""A five-point cardinal scale with CH-aware comparisons.

``Finite(n) < aleph0 < aleph1 <= c < 2^c``.  Whether ``aleph1 < c`` is left
open unless the caller assumes CH, so comparisons answer in :class:`Truth3`.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Truth3(Enum):
    YES = "yes"
    NO = "no"
    INDEPENDENT = "independent"
    # only produced by decision procedures that cannot settle a question
    UNKNOWN = "unknown"

    def __and__(self, other: "Truth3") -> "Truth3":
        if Truth3.NO in (self, other):
            return Truth3.NO
        if self is other:
            return self
        if Truth3.UNKNOWN in (self, other):
            return Truth3.UNKNOWN
        return Truth3.INDEPENDENT

    @staticmethod
    def of(flag: bool) -> "Truth3":
        return Truth3.YES if flag else Truth3.NO


@dataclass(frozen=True, order=True)
class Cardinal:
    # level: 0 finite, 1 aleph0, 2 aleph1, 3 continuum, 4 2^c
    level: int
    n: int = 0

    def __post_init__(self):
        if self.level == 0 and self.n < 0:
            raise ValueError("negative cardinal")
        if self.level and self.n:
            raise ValueError("infinite cardinal carries no count")

    @property
    def is_finite(self) -> bool:
        return self.level == 0

    @property
    def is_zero(self) -> bool:
        return self.level == 0 and self.n == 0

    @property
    def countable(self) -> bool:
        return self.level <= 1

    def __str__(self):
        return self.n.__str__() if self.level == 0 else _NAMES[self.level]

    def __repr__(self):
        return f"Cardinal({self})"


_NAMES = {1: "aleph0", 2: "aleph1", 3: "c", 4: "2^c"}


def Finite(n: int) -> Cardinal:
    return Cardinal(0, n)


ALEPH0 = Cardinal(1)
ALEPH1 = Cardinal(2)
CONTINUUM = Cardinal(3)
TWO_TO_CONTINUUM = Cardinal(4)
ZERO_CARD = Finite(0)


def parse_cardinal(text: str) -> Cardinal:
    t = text.strip()
    if t.isdigit():
        return Finite(int(t))
    for level, name in _NAMES.items():
        if t == name:
            return Cardinal(level)
    if t == "w":
        return ALEPH0
    raise ValueError(f"unknown cardinal token {text!r}")


def card_le(a: Cardinal, b: Cardinal, assume_ch: bool = False) -> Truth3:
    if a.level == 3 and b.level == 2:
        return Truth3.YES if assume_ch else Truth3.INDEPENDENT
    return Truth3.of((a.level, a.n) <= (b.level, b.n))


def card_max(a: Cardinal, b: Cardinal) -> Cardinal:
    return max(a, b)


def card_sum(a: Cardinal, b: Cardinal) -> Cardinal:
    if a.is_finite and b.is_finite:
        return Finite(a.n + b.n)
    return max(a, b)


def card_mul(a: Cardinal, b: Cardinal) -> Cardinal:
    if a.is_finite and b.is_finite:
        return Finite(a.n * b.n)
    if a.is_zero or b.is_zero:
        return ZERO_CARD
    return max(a, b)
