"""Computable constants and the carry-statistics experiments."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt
from typing import Callable

from .arclength import pi_real
from .arithmetic import scan_depths
from .constructions import CauchyInput, from_cauchy
from .decimal_stream import DecimalReal, from_fraction, from_truncations
from .exact_scaled import pow10

__all__ = [
    "sqrt_rational",
    "sqrt_real",
    "e_real",
    "sqrt2_real",
    "ConstantSpec",
    "CONSTANTS",
    "constant",
    "CarryStatsReport",
    "carry_stats",
    "pi_plus_e_depths",
]


# -- square roots ------------------------------------------------------------


def _rational_sqrt(r: Fraction) -> Fraction | None:
    p, q = r.numerator, r.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def sqrt_rational(r) -> DecimalReal:
    """Square root of a non-negative rational.

    Digit k is the largest with ``y_k**2 <= r``; with ``floor(r 10^2k)`` as an
    integer this is exactly ``isqrt``.  Perfect squares come back exact.
    """
    r = Fraction(r)
    if r < 0:
        raise ValueError("square root of a negative rational")
    root = _rational_sqrt(r)
    if root is not None:
        return from_fraction(root)
    p, q = r.numerator, r.denominator
    return from_truncations(
        lambda k: isqrt(p * pow10(2 * k) // q),
        promise="irrational square root",
        label=f"sqrt({r})",
    )


def sqrt_real(x: DecimalReal) -> DecimalReal:
    """Square root of a non-negative decimal real.

    ``floor(sqrt(x) 10^k) = isqrt(floor(x 10^2k))``, so each truncation costs
    one truncation of x and needs no fuel.
    """
    if x.is_exact:
        return sqrt_rational(x.fraction)
    if x.integer_part < 0:
        raise ValueError("square root of a negative number")
    return from_truncations(
        lambda k: isqrt(x.floor_scaled(2 * k)),
        promise=f"square root of {x.label}",
        label=f"sqrt({x.label})",
    )


@lru_cache(maxsize=1)
def sqrt2_real() -> DecimalReal:
    return sqrt_rational(2)


# -- e -----------------------------------------------------------------------


class _ExpSeries:
    """Partial sums ``sum_{i<=n} 1/i!`` with a shared cache."""

    def __init__(self):
        self.sums = [Fraction(1)]
        self.fact = 1

    def term(self, n: int) -> Fraction:
        while len(self.sums) <= n:
            i = len(self.sums)
            self.fact *= i
            self.sums.append(self.sums[-1] + Fraction(1, self.fact))
        return self.sums[n]

    @staticmethod
    def modulus(s: int) -> int:
        # the tail after term n is below 2/(n+1)!
        bound = 2 * pow10(s)
        n = 0
        while factorial(n + 1) <= bound:
            n += 1
        return n


@lru_cache(maxsize=1)
def e_real() -> DecimalReal:
    series = _ExpSeries()
    x = from_cauchy(CauchyInput(series.term, series.modulus))
    x.label = "e"
    return x


# -- registry ----------------------------------------------------------------


@dataclass(frozen=True)
class ConstantSpec:
    name: str
    build: Callable[[], DecimalReal]
    note: str

    def real(self) -> DecimalReal:
        return self.build()


CONSTANTS: dict[str, ConstantSpec] = {
    "pi": ConstantSpec("pi", pi_real, "length of the unit semicircle, bracketed by bisected polygons"),
    "e": ConstantSpec("e", e_real, "Cauchy limit of sum 1/i! with remainder below 2/(n+1)!"),
    "sqrt2": ConstantSpec("sqrt2", sqrt2_real, "largest y_k with y_k^2 <= 2 at each scale"),
}


def constant(name: str) -> DecimalReal:
    try:
        return CONSTANTS[name].real()
    except KeyError:
        raise KeyError(f"unknown constant {name!r}; known: {', '.join(CONSTANTS)}") from None


# -- carry statistics --------------------------------------------------------


@dataclass(frozen=True)
class CarryStatsReport:
    """Fraction of trials where ``(result)_k`` equals the lower of its two
    possible values, ``(x_{k+1} + y_{k+1})_k`` or ``(x_{k+1} y_{k+1})_k``."""

    operation: str
    k: int
    trials: int
    seed: int
    hits: int
    rejected: int = 0
    generator: str = field(default="random.Random (MT19937)")

    @property
    def frequency_first_choice(self) -> Fraction:
        return Fraction(self.hits, self.trials)

    @property
    def stderr(self) -> float:
        p = float(self.frequency_first_choice)
        return (p * (1 - p) / self.trials) ** 0.5

    def summary(self) -> str:
        return (
            f"op={self.operation} k={self.k} trials={self.trials} seed={self.seed} "
            f"first_choice={self.hits} frequency={float(self.frequency_first_choice):.6f} "
            f"(+/- {self.stderr:.6f})"
        )

    def as_dict(self) -> dict:
        return {
            "operation": self.operation,
            "k": self.k,
            "trials": self.trials,
            "seed": self.seed,
            "hits": self.hits,
            "rejected": self.rejected,
            "frequency": float(self.frequency_first_choice),
            "stderr": self.stderr,
            "generator": self.generator,
        }


_EXTRA = 12  # digits drawn beyond position k before any extension


def _extend(rng: random.Random, x: int, y: int, digits: int) -> tuple[int, int]:
    scale = pow10(digits)
    return x * scale + rng.randrange(scale), y * scale + rng.randrange(scale)


def _add_trial(rng: random.Random, k: int) -> tuple[bool, bool]:
    """Draw x, y in [0,1) digit by digit until (x+y)_k is decided."""
    d = k + _EXTRA
    x, y = _extend(rng, 0, 0, d)
    lower = (x // pow10(d - k - 1) + y // pow10(d - k - 1)) // 10
    while True:
        # (x+y) 10^d lies in [X+Y, X+Y+2)
        lo = (x + y) // pow10(d - k)
        hi = (x + y + 1) // pow10(d - k)
        if lo == hi:
            return True, lo == lower
        x, y = _extend(rng, x, y, _EXTRA)
        d += _EXTRA


def _mul_trial(rng: random.Random, k: int) -> tuple[bool, bool]:
    """Draw (x, y) uniformly on {x, y >= 0, x + y <= 1} by rejection, then
    decide (xy)_k.  Returns (accepted, hit)."""
    d = k + _EXTRA
    x, y = _extend(rng, 0, 0, d)
    while True:
        full = pow10(d)
        if x + y + 2 <= full:
            break
        if x + y >= full:
            return False, False
        x, y = _extend(rng, x, y, _EXTRA)
        d += _EXTRA
    cut = pow10(d - k - 1)
    lower = (x // cut) * (y // cut) // pow10(k + 2)
    while True:
        # x y 10^(2d) lies in [XY, (X+1)(Y+1))
        grid = pow10(2 * d - k)
        lo = x * y // grid
        hi = ((x + 1) * (y + 1) - 1) // grid
        if lo == hi:
            return True, lo == lower
        x, y = _extend(rng, x, y, _EXTRA)
        d += _EXTRA


def carry_stats(op: str, k: int, trials: int, seed: int = 0) -> CarryStatsReport:
    """Monte Carlo frequency of the lower carry choice at digit position k.

    Operands are uniform random digit strings (i.i.d. digits), drawn lazily
    only as deep as needed to decide the truncation of the result.  ``add``
    samples the unit square; ``mul`` samples ``x + y <= 1`` by rejection.
    The same seed gives the same report.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if k < 0:
        raise ValueError("k must be non-negative")
    if op not in ("add", "mul"):
        raise ValueError(f"op must be 'add' or 'mul', not {op!r}")
    rng = random.Random(seed)
    trial = _add_trial if op == "add" else _mul_trial
    hits = rejected = done = 0
    while done < trials:
        accepted, hit = trial(rng, k)
        if not accepted:
            rejected += 1
            continue
        done += 1
        hits += hit
    return CarryStatsReport(op, k, trials, seed, hits, rejected)


# -- pi + e ------------------------------------------------------------------


def pi_plus_e_depths(positions: int, fuel: int = 1000) -> list[int | None]:
    """How far past each position the addition scan for pi + e had to look.

    Nothing here decides whether the sum terminates; a long scan is simply
    reported.
    """
    return scan_depths("add", pi_real(), e_real(), positions, fuel)
