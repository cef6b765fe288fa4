"""Exact arithmetic on terminating decimals.

A :class:`ScaledDecimal` is an integer mantissa at a power-of-ten scale,
``value = mantissa * 10**-scale``.  Truncation and digit extraction use floor
semantics at every scale, so a negative number reads with a negative integer
part followed by ordinary digits: -3.087 is ``(-4).913``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "ScaledDecimal",
    "pow10",
    "add_exact",
    "sub_exact",
    "mul_exact",
    "truncate",
    "digit_at",
    "cmp_exact",
    "terminating_scale",
]


@lru_cache(maxsize=8192)
def pow10(n: int) -> int:
    return 10**n


_FLOOR_FORM = re.compile(r"\(\s*([-−]?\d+)\s*\)\.(\d+)")
_PLAIN_FORM = re.compile(r"([-+−]?)(\d+(?:\.\d*)?|\.\d+)")


def terminating_scale(q: Fraction) -> int | None:
    """Smallest k with q * 10**k integral, or None if q does not terminate."""
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return None
    return max(twos, fives)


@dataclass(frozen=True, slots=True, eq=False)
class ScaledDecimal:
    """Terminating decimal ``mantissa * 10**-scale``.

    Equality and hashing are value based, so ``ScaledDecimal(5, 1)`` equals
    ``ScaledDecimal(50, 2)``.  Trailing zeros are never stripped.
    """

    mantissa: int
    scale: int = 0

    def __post_init__(self):
        if self.scale < 0:
            raise ValueError(f"scale must be non-negative, got {self.scale}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> ScaledDecimal:
        q = Fraction(q)
        k = terminating_scale(q)
        if k is None:
            raise ValueError(f"{q} is not a terminating decimal")
        return cls(q.numerator * pow10(k) // q.denominator, k)

    @classmethod
    def parse(cls, text: str) -> ScaledDecimal:
        """Read ``"5.678"``, ``"-2.443"`` or the floor form ``"(-2).443"``."""
        s = text.strip()
        m = _FLOOR_FORM.fullmatch(s)
        if m:
            a0 = int(m.group(1).replace("−", "-"))
            frac = m.group(2)
            k = len(frac)
            return cls(a0 * pow10(k) + int(frac), k)
        m = _PLAIN_FORM.fullmatch(s)
        if not m:
            raise ValueError(f"not a decimal literal: {text!r}")
        sign, body = m.groups()
        whole, _, frac = body.partition(".")
        k = len(frac)
        mant = int(whole or "0") * pow10(k) + int(frac or "0")
        if sign in ("-", "−"):
            mant = -mant
        return cls(mant, k)

    # -- views ------------------------------------------------------------

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, pow10(self.scale))

    @property
    def integer_part(self) -> int:
        return self.mantissa // pow10(self.scale)

    def normalized(self) -> ScaledDecimal:
        m, k = self.mantissa, self.scale
        while k > 0 and m % 10 == 0:
            m //= 10
            k -= 1
        return ScaledDecimal(m, k)

    def rescale(self, k: int) -> ScaledDecimal:
        """Same value at a finer scale ``k >= self.scale``."""
        if k < self.scale:
            raise ValueError("rescale cannot drop digits; use truncate")
        return ScaledDecimal(self.mantissa * pow10(k - self.scale), k)

    def truncate(self, k: int) -> ScaledDecimal:
        if k >= self.scale:
            return self.rescale(k)
        return ScaledDecimal(self.mantissa // pow10(self.scale - k), k)

    def digit_at(self, k: int) -> int:
        if k == 0:
            return self.integer_part
        return self.truncate(k).mantissa % 10

    def __str__(self) -> str:
        k = self.scale
        a0, frac = divmod(self.mantissa, pow10(k))
        if k == 0:
            return str(a0)
        digits = str(frac).zfill(k)
        if a0 < 0:
            return f"({a0}).{digits}"
        return f"{a0}.{digits}"

    def __repr__(self) -> str:
        return f"ScaledDecimal({self.mantissa}, {self.scale})"

    # -- arithmetic -------------------------------------------------------

    def _align(self, other: ScaledDecimal) -> tuple[int, int, int]:
        a, b = self.scale, other.scale
        if a == b:
            return self.mantissa, other.mantissa, a
        if a < b:
            return self.mantissa * pow10(b - a), other.mantissa, b
        return self.mantissa, other.mantissa * pow10(a - b), a

    def __add__(self, other):
        if not isinstance(other, ScaledDecimal):
            return NotImplemented
        x, y, k = self._align(other)
        return ScaledDecimal(x + y, k)

    def __sub__(self, other):
        if not isinstance(other, ScaledDecimal):
            return NotImplemented
        x, y, k = self._align(other)
        return ScaledDecimal(x - y, k)

    def __mul__(self, other):
        if not isinstance(other, ScaledDecimal):
            return NotImplemented
        return ScaledDecimal(self.mantissa * other.mantissa, self.scale + other.scale)

    def __neg__(self):
        return ScaledDecimal(-self.mantissa, self.scale)

    def cmp(self, other: ScaledDecimal) -> int:
        x, y, _ = self._align(other)
        return (x > y) - (x < y)

    def __eq__(self, other):
        if not isinstance(other, ScaledDecimal):
            return NotImplemented
        if self.scale == other.scale:
            return self.mantissa == other.mantissa
        return self.cmp(other) == 0

    def __hash__(self):
        n = self.normalized()
        return hash((n.mantissa, n.scale))

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0


def add_exact(a: ScaledDecimal, b: ScaledDecimal) -> ScaledDecimal:
    return a + b


def sub_exact(a: ScaledDecimal, b: ScaledDecimal) -> ScaledDecimal:
    return a - b


def mul_exact(a: ScaledDecimal, b: ScaledDecimal) -> ScaledDecimal:
    return a * b


def truncate(a: ScaledDecimal, k: int) -> ScaledDecimal:
    """Largest scale-``k`` grid value not exceeding ``a``."""
    return a.truncate(k)


def digit_at(a: ScaledDecimal, k: int) -> int:
    """k-th digit of the floor expansion; position 0 is the integer part."""
    return a.digit_at(k)


def cmp_exact(a: ScaledDecimal, b: ScaledDecimal) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to, or greater than ``b``."""
    return a.cmp(b)
