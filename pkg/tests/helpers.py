"""Test-side builders.  Reference values here use Fraction only."""

from __future__ import annotations

import random
from fractions import Fraction

from drcalc.decimal_stream import DecimalReal, from_digits


class DigitSource:
    """Deterministic infinite digit stream: digit j from (seed, j)."""

    def __init__(self, seed: int, a0: int = 0, prefix: str = ""):
        self.seed, self.a0, self.prefix = seed, a0, prefix

    def digit(self, j: int) -> int:
        if j <= len(self.prefix):
            return int(self.prefix[j - 1])
        return random.Random(self.seed * 1_000_003 + j).randrange(10)

    def floor_scaled(self, k: int) -> int:
        t = self.a0
        for j in range(1, k + 1):
            t = t * 10 + self.digit(j)
        return t

    def truncation(self, k: int) -> Fraction:
        return Fraction(self.floor_scaled(k), 10**k)

    def real(self) -> DecimalReal:
        return from_digits(self.a0, self.digit, label=f"rand{self.seed}", promise="random digits")


def random_pair_corpus(n: int, seed: int, int_range: int = 3):
    rng = random.Random(seed)
    out = []
    for i in range(n):
        a = DigitSource(rng.randrange(10**9), rng.randint(-int_range, int_range))
        b = DigitSource(rng.randrange(10**9), rng.randint(-int_range, int_range))
        out.append((a, b))
    return out


def floor_at(q: Fraction, k: int) -> int:
    return q.numerator * 10**k // q.denominator
