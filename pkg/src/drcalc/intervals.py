"""Closed intervals with rational endpoints and outward rounding."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .exact_scaled import pow10

__all__ = ["RationalInterval", "sqrt_down", "sqrt_up"]


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def sqrt_down(q: Fraction, scale: int) -> Fraction:
    """Largest multiple of 10**-scale not above sqrt(q)."""
    if q < 0:
        raise ValueError("square root of a negative number")
    return Fraction(isqrt(_floor(q * pow10(2 * scale))), pow10(scale))


def sqrt_up(q: Fraction, scale: int) -> Fraction:
    """Smallest multiple of 10**-scale not below sqrt(q)."""
    if q < 0:
        raise ValueError("square root of a negative number")
    n = _ceil(q * pow10(2 * scale))
    r = isqrt(n)
    if r * r < n:
        r += 1
    return Fraction(r, pow10(scale))


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q) -> RationalInterval:
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, q) -> bool:
        return self.lo <= q <= self.hi

    def overlaps(self, other: RationalInterval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: RationalInterval) -> RationalInterval:
        return RationalInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def round_out(self, scale: int) -> RationalInterval:
        d = pow10(scale)
        return RationalInterval(Fraction(_floor(self.lo * d), d), Fraction(_ceil(self.hi * d), d))

    def __add__(self, other):
        other = _as_interval(other)
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_interval(other)
        return RationalInterval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return _as_interval(other) - self

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __mul__(self, other):
        other = _as_interval(other)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RationalInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_interval(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("divisor interval contains 0")
        return self * RationalInterval(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other):
        return _as_interval(other) / self

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RationalInterval(0, max(-self.lo, self.hi))

    def square(self) -> RationalInterval:
        a = abs(self)
        return RationalInterval(a.lo * a.lo, a.hi * a.hi)

    def sqrt(self, scale: int) -> RationalInterval:
        """Outward-rounded square root on the grid 10**-scale; a slightly
        negative lower end (from rounding) is clamped to 0."""
        if self.hi < 0:
            raise ValueError("square root of a negative interval")
        return RationalInterval(sqrt_down(max(self.lo, Fraction(0)), scale), sqrt_up(self.hi, scale))

    def __repr__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _as_interval(v) -> RationalInterval:
    if isinstance(v, RationalInterval):
        return v
    return RationalInterval.point(Fraction(v))
