"""Length of monotone plane curves, and pi as the length of the unit
semicircle ``t -> (t, sqrt(1 - t^2))``.

General monotone curves get certified lower bounds from inscribed polygons
and the coordinate-variation upper bound.  Unit-circle arcs additionally get
upper bounds from circumscribed tangent polygons, which is what lets digits
of pi be certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .constructions import enclosure_real
from .decimal_stream import DecimalReal, from_fraction
from .exact_scaled import pow10
from .intervals import RationalInterval, sqrt_down, sqrt_up

__all__ = [
    "GUARD",
    "PrecisionUnreachable",
    "MonotoneCurve",
    "segment",
    "quarter_circle",
    "semicircle",
    "semicircle_pieces",
    "polygonal_lower",
    "variation_upper_bound",
    "circle_arc_length",
    "arc_angle",
    "pi_real",
]

GUARD = 4

CoordinateMap = Callable[[RationalInterval, int], RationalInterval]


class PrecisionUnreachable(ArithmeticError):
    def __init__(self, message: str, best: RationalInterval):
        self.best = best
        super().__init__(f"{message}; best enclosure {best}")


@dataclass(frozen=True)
class MonotoneCurve:
    """Curve ``(f1, f2)`` on ``[a, b]``.

    Each coordinate map takes a parameter interval and a working scale and
    returns an outward-rounded enclosure of the image.  ``increasing`` holds
    one tag per coordinate: True, False, or None for a coordinate that is not
    monotone on the whole domain.
    """

    a: Fraction
    b: Fraction
    f1: CoordinateMap
    f2: CoordinateMap
    increasing: tuple[bool | None, bool | None]

    @property
    def is_monotone(self) -> bool:
        return None not in self.increasing

    def at(self, t, scale: int) -> tuple[RationalInterval, RationalInterval]:
        p = RationalInterval.point(Fraction(t))
        return self.f1(p, scale), self.f2(p, scale)

    def restrict(self, a, b, increasing=None) -> MonotoneCurve:
        a, b = Fraction(a), Fraction(b)
        if not self.a <= a <= b <= self.b:
            raise ValueError("restriction must lie inside the domain")
        return MonotoneCurve(a, b, self.f1, self.f2, increasing or self.increasing)


def segment(p0: tuple, p1: tuple) -> MonotoneCurve:
    (x0, y0), (x1, y1) = [tuple(map(Fraction, p)) for p in (p0, p1)]
    dx, dy = x1 - x0, y1 - y0
    return MonotoneCurve(
        Fraction(0),
        Fraction(1),
        lambda t, s: t * dx + x0,
        lambda t, s: t * dy + y0,
        (dx >= 0, dy >= 0),
    )


def _ident(t: RationalInterval, scale: int) -> RationalInterval:
    return t


def _circle_height(t: RationalInterval, scale: int) -> RationalInterval:
    return (1 - t.square()).sqrt(scale)


def semicircle() -> MonotoneCurve:
    """The upper unit semicircle on [-1, 1]; its height is not monotone."""
    return MonotoneCurve(Fraction(-1), Fraction(1), _ident, _circle_height, (True, None))


def semicircle_pieces() -> tuple[MonotoneCurve, MonotoneCurve]:
    s = semicircle()
    return s.restrict(-1, 0, (True, True)), s.restrict(0, 1, (True, False))


def quarter_circle() -> MonotoneCurve:
    return semicircle_pieces()[1]


def polygonal_lower(curve: MonotoneCurve, partition: Sequence, precision: int) -> RationalInterval:
    """Enclosure of the inscribed polygon length over ``partition``.

    Its ``lo`` is a certified lower bound for the curve length.
    """
    cs = [Fraction(c) for c in partition]
    if len(cs) < 2 or cs[0] != curve.a or cs[-1] != curve.b:
        raise ValueError("partition must run from the start to the end of the domain")
    if any(u >= v for u, v in zip(cs, cs[1:])):
        raise ValueError("partition must be strictly increasing")
    scale = 2 * (precision + GUARD)
    pts = [curve.at(c, scale) for c in cs]
    total = RationalInterval.point(0)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        chord = ((x1 - x0).square() + (y1 - y0).square()).sqrt(scale)
        total = total + chord
    return total.round_out(precision + GUARD)


def variation_upper_bound(curve: MonotoneCurve, precision: int = 20) -> RationalInterval:
    """Enclosure of ``|f1(a)-f1(b)| + |f2(a)-f2(b)|``, an upper bound for the
    length of a monotone curve."""
    if not curve.is_monotone:
        raise ValueError("variation bound needs monotone coordinates; split the curve first")
    scale = 2 * (precision + GUARD)
    xa, ya = curve.at(curve.a, scale)
    xb, yb = curve.at(curve.b, scale)
    return (abs(xa - xb) + abs(ya - yb)).round_out(precision + GUARD)


def _next_chord(c: RationalInterval, scale: int) -> RationalInterval:
    # chord of half the arc: c / sqrt(2 + sqrt(4 - c^2)), increasing in c
    grid = pow10(scale)
    inner_up = sqrt_up(4 - c.lo * c.lo, scale)
    lo = c.lo / sqrt_up(2 + inner_up, scale)
    inner_dn = sqrt_down(max(4 - c.hi * c.hi, Fraction(0)), scale)
    hi = c.hi / sqrt_down(2 + inner_dn, scale)
    return RationalInterval(
        Fraction(lo.numerator * grid // lo.denominator, grid),
        Fraction(-((-hi.numerator * grid) // hi.denominator), grid),
    )


def circle_arc_length(t0, t1, precision_k: int, max_doublings: int | None = None) -> RationalInterval:
    """Two-sided enclosure of the length of the unit-circle arc between the
    points above ``t0`` and ``t1``, of width below ``10**-precision_k``.

    The arc is cut into ``2**j`` equal pieces by repeated bisection.  All
    pieces share one chord length ``c``, so the inscribed polygon has length
    ``2**j * c`` and the circumscribed tangent polygon ``2**j * 2c/sqrt(4-c^2)``.
    """
    t0, t1 = Fraction(t0), Fraction(t1)
    if not -1 <= t0 < t1 <= 1:
        raise ValueError("need -1 <= t0 < t1 <= 1")
    scale = 2 * (precision_k + GUARD)
    if max_doublings is None:
        max_doublings = 4 * precision_k + 60
    curve = semicircle()
    (x0, y0), (x1, y1) = curve.at(t0, scale), curve.at(t1, scale)
    c = ((x1 - x0).square() + (y1 - y0).square()).sqrt(scale)
    target = Fraction(1, pow10(precision_k))
    best = None
    for j in range(max_doublings + 1):
        pieces = 1 << j
        lower = pieces * c.lo
        root = sqrt_down(max(4 - c.hi * c.hi, Fraction(0)), scale)
        if root > 0:  # no tangent polygon for a half-turn piece
            best = RationalInterval(lower, max(lower, pieces * 2 * c.hi / root))
            if best.width < target:
                return best
        c = _next_chord(c, scale)
    raise PrecisionUnreachable(
        f"arc ({t0}, {t1}) not resolved to 1e-{precision_k} in {max_doublings} doublings",
        best or RationalInterval(0, 4),
    )


def arc_angle(t0, t1) -> DecimalReal:
    """Length of the arc between ``t0`` and ``t1`` (the sector's angle)."""
    t0, t1 = Fraction(t0), Fraction(t1)
    if t0 == t1:
        return from_fraction(Fraction(0))
    if t0 > t1:
        raise ValueError("need t0 <= t1")

    def enclose(s):
        box = circle_arc_length(t0, t1, s)
        return box.lo, box.hi

    return enclosure_real(enclose, label=f"arc({t0}, {t1})",
                          promise="bisection polygons bracket the arc")


@lru_cache(maxsize=1)
def pi_real() -> DecimalReal:
    """pi, the length of the unit semicircle."""
    x = arc_angle(-1, 1)
    x.label = "pi"
    return x
