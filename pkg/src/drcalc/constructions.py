"""Bridges from cuts, Cauchy sequences, lower bounds and pairings into
decimal reals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .decimal_stream import DEFAULT_FUEL, Backing, DecimalReal
from .exact_scaled import pow10

__all__ = [
    "ConstructionError",
    "MalformedPairing",
    "DedekindCut",
    "CauchyInput",
    "from_dedekind",
    "from_cauchy",
    "enclosure_real",
    "glb_finite",
    "glb_horizon",
    "cantor_pair",
    "cantor_unpair",
    "encode_integer",
]


class ConstructionError(ValueError):
    """The supplied cut or sequence broke its own contract."""


class MalformedPairing(ValueError):
    def __init__(self, position: int, reason: str):
        self.position = position
        super().__init__(f"malformed pairing at digit {position}: {reason}")


# -- Dedekind cuts -------------------------------------------------------------


@dataclass(frozen=True)
class DedekindCut:
    """A cut ``(A|B)`` of the rationals given by a decision procedure.

    ``in_lower(q)`` is True for ``q`` in A.  B must have no smallest element;
    that part of the contract cannot be checked in general.
    """

    in_lower: Callable[[Fraction], bool]
    witness_lo: Fraction
    witness_hi: Fraction


class _CutDigits:
    def __init__(self, cut: DedekindCut, nines_limit: int):
        self.cut = cut
        self.nines_limit = nines_limit
        self.depth = -1
        self.trunc = 0
        self.nines = 0

    def _a0(self) -> int:
        inside = self.cut.in_lower
        lo = math.floor(self.cut.witness_lo)
        hi = math.ceil(self.cut.witness_hi)
        if lo == hi:
            hi += 1
        if not inside(Fraction(lo)):
            raise ConstructionError(f"integer {lo} below witness_lo is not in A")
        if inside(Fraction(hi)):
            raise ConstructionError(f"integer {hi} above witness_hi is not in B")
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if inside(Fraction(mid)):
                lo = mid
            else:
                hi = mid
        return lo

    def __call__(self, k: int):
        inside = self.cut.in_lower
        if self.depth < 0:
            self.trunc, self.depth = self._a0(), 0
        while self.depth < k:
            j = self.depth + 1
            den = pow10(j)
            base = self.trunc * 10
            lo, hi = 0, 10  # base+lo in A, base+hi in B
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if inside(Fraction(base + mid, den)):
                    lo = mid
                else:
                    hi = mid
            self.nines = self.nines + 1 if lo == 9 else 0
            if self.nines > self.nines_limit:
                g = Fraction(base + 10, den)
                raise ConstructionError(
                    f"digits end in more than {self.nines_limit} nines; "
                    f"B appears to have a smallest element {g}"
                )
            self.trunc, self.depth = base + lo, j
        return self.depth, self.trunc


def from_dedekind(cut: DedekindCut, *, nines_limit: int = DEFAULT_FUEL) -> DecimalReal:
    """The decimal identified with ``cut``: a0 in A with a0+1 in B, then each
    digit the largest keeping the truncation in A.

    A run of more than ``nines_limit`` consecutive 9s is reported as a cut
    whose upper class has a least element, which the construction excludes.
    """
    if not cut.witness_lo < cut.witness_hi:
        raise ConstructionError("witness_lo must be below witness_hi")
    if not cut.in_lower(Fraction(cut.witness_lo)):
        raise ConstructionError("witness_lo is classified into B")
    if cut.in_lower(Fraction(cut.witness_hi)):
        raise ConstructionError("witness_hi is classified into A")
    return DecimalReal(
        producer=_CutDigits(cut, nines_limit),
        backing=Backing.ALGORITHMIC,
        label="cut",
        promise="cut with B lacking a smallest element",
    )


# -- enclosures and Cauchy sequences -------------------------------------------


def _floor_at(q: Fraction, k: int) -> int:
    return q.numerator * pow10(k) // q.denominator


class _EnclosureDigits:
    """Digits of a limit known through closed rational enclosures.

    ``enclose(s)`` returns ``(lo, hi)`` containing the value with
    ``hi - lo <= 2 * 10**-s``.  If a grid point stays inside every enclosure
    up to ``s = k + horizon`` the value is identified with that point.
    """

    def __init__(self, enclose: Callable[[int], tuple[Fraction, Fraction]], horizon: int, lookahead: int):
        self.enclose = enclose
        self.horizon = horizon
        self.lookahead = lookahead

    def __call__(self, k: int):
        s = k + 2 + self.lookahead
        step = 1
        while True:
            lo, hi = self.enclose(s)
            flo, fhi = _floor_at(lo, k), _floor_at(hi, k)
            if flo == fhi:
                j = k
                while j < s and _floor_at(lo, j + 1) == _floor_at(hi, j + 1):
                    j += 1
                return j, _floor_at(lo, j)
            if s >= k + self.horizon:
                # the limit sits on the grid point between the two cells
                return Fraction(fhi, pow10(k))
            s = min(s + step, max(k + self.horizon, s + 1))
            step *= 2


def enclosure_real(
    enclose: Callable[[int], tuple[Fraction, Fraction]],
    *,
    horizon: int = DEFAULT_FUEL,
    lookahead: int = 8,
    label: str = "",
    promise: str = "",
) -> DecimalReal:
    """Algorithmic value from enclosures ``enclose(s) = (lo, hi)`` with
    ``hi - lo <= 2 * 10**-s``; each request computes ``lookahead`` extra
    places so that sequential digit requests rarely recompute."""
    return DecimalReal(
        producer=_EnclosureDigits(enclose, horizon, lookahead),
        backing=Backing.ALGORITHMIC,
        label=label,
        promise=promise or "enclosures are valid and shrink to a single point",
    )


@dataclass(frozen=True)
class CauchyInput:
    """Rational sequence ``term(n)`` (n >= 1) with an effective modulus:
    ``|term(m) - term(n)| < 10**-s`` whenever ``m, n > modulus(s)``."""

    term: Callable[[int], Fraction]
    modulus: Callable[[int], int]


class _CauchyEnclosure:
    def __init__(self, c: CauchyInput):
        self.c = c
        self.last: tuple[int, int, Fraction] | None = None

    def __call__(self, s: int):
        n = self.c.modulus(s)
        q = Fraction(self.c.term(n + 1))
        if self.last is not None:
            s0, n0, q0 = self.last
            if (s > s0 and n < n0) or (s < s0 and n > n0):
                raise ConstructionError(f"modulus is not monotone between scales {s0} and {s}")
            if abs(q - q0) >= Fraction(1, pow10(min(s, s0))):
                raise ConstructionError(f"term {n + 1} escapes the enclosure established at scale {s0}")
        if self.last is None or s > self.last[0]:
            self.last = (s, n, q)
        r = Fraction(1, pow10(s))
        return q - r, q + r


def from_cauchy(c: CauchyInput, *, horizon: int = DEFAULT_FUEL) -> DecimalReal:
    """Limit of a Cauchy sequence with modulus.

    When the tail of the sequence keeps straddling a grid point (as with
    ``1 + (-1)**n / 10**n``) the two candidate expansions are identified with
    the terminating one.
    """
    return enclosure_real(_CauchyEnclosure(c), horizon=horizon, label="cauchy",
                          promise="sequence is Cauchy with the given modulus")


# -- greatest lower bound ------------------------------------------------------


class _GlbDigits:
    def __init__(self, xs: Sequence[DecimalReal]):
        self.survivors = list(xs)
        self.depth = -1
        self.trunc = 0

    def __call__(self, k: int):
        if len(self.survivors) == 1:
            only = self.survivors[0]
            t = only.floor_scaled(k)
            return (only.fraction if only.is_exact else (k, t))
        while self.depth < k:
            j = self.depth + 1
            if j == 0:
                picks = [x.integer_part for x in self.survivors]
            else:
                picks = [x.digit(j) for x in self.survivors]
            best = min(picks)
            self.survivors = [x for x, d in zip(self.survivors, picks) if d == best]
            self.trunc = best if j == 0 else self.trunc * 10 + best
            self.depth = j
            if len(self.survivors) == 1 and self.depth < k:
                return self(k)
        return self.depth, self.trunc


def glb_finite(xs: Iterable[DecimalReal]) -> DecimalReal:
    """Greatest lower bound of a non-empty finite set by smallest-digit
    selection among the survivors at each position."""
    xs = list(xs)
    if not xs:
        raise ValueError("glb of an empty set")
    if len(xs) == 1:
        return xs[0]
    if all(x.is_exact for x in xs):
        return min(xs, key=lambda x: x.fraction)
    return DecimalReal(
        producer=_GlbDigits(xs),
        backing=Backing.ALGORITHMIC,
        label="glb(" + ", ".join(x.label for x in xs) + ")",
        promise="minimum of valid elements",
    )


def glb_horizon(elements: Iterable[DecimalReal], horizon: int) -> DecimalReal:
    """glb of the first ``horizon`` elements of an enumeration.

    This is an upper bound for the glb of the whole enumeration; nothing is
    claimed about how close it is.
    """
    head = []
    for x in elements:
        head.append(x)
        if len(head) >= horizon:
            break
    return glb_finite(head)


# -- Cantor interleaving -------------------------------------------------------


def encode_integer(n: int) -> list[int]:
    """Sign digit (0 or 1), ``|n|`` ones, then a closing 0."""
    return [1 if n < 0 else 0] + [1] * abs(n) + [0]


class _Interleave:
    def __init__(self, x: DecimalReal, y: DecimalReal):
        self.x, self.y = x, y
        self.boxes: list[int] | None = None

    def box(self, i: int) -> int:
        if self.boxes is None:
            self.boxes = encode_integer(self.x.integer_part) + encode_integer(self.y.integer_part)
        return self.boxes[i - 1] if i <= len(self.boxes) else 0

    def __call__(self, k: int):
        m = -(-k // 3)  # whole triples covering position k
        xd = self.x.digits(m)
        yd = self.y.digits(m)
        t = 0
        for i in range(m):
            t = t * 1000 + xd[i] * 100 + yd[i] * 10 + self.box(i + 1)
        return 3 * m, t


def cantor_pair(x: DecimalReal, y: DecimalReal) -> DecimalReal:
    """``0.a1 b1 c1 a2 b2 c2 ...`` where the ``c`` digits spell out the
    integer parts of x and y, then 0 forever."""
    return DecimalReal(
        producer=_Interleave(x, y),
        backing=Backing.ALGORITHMIC,
        label=f"pair({x.label}, {y.label})",
        promise="interleaving of valid elements; box digits are 0 eventually",
    )


def _read_boxes(z: DecimalReal) -> tuple[int, int, int]:
    """Decode both integer parts; returns (a0, b0, boxes consumed)."""
    if z.integer_part != 0:
        raise MalformedPairing(0, "integer part must be 0")
    i = 0
    out = []
    for _ in range(2):
        i += 1
        sign = z.digit(3 * i)
        if sign not in (0, 1):
            raise MalformedPairing(3 * i, f"sign digit {sign}")
        count = 0
        while True:
            i += 1
            d = z.digit(3 * i)
            if d == 0:
                break
            if d != 1:
                raise MalformedPairing(3 * i, f"unary digit {d}")
            count += 1
        if sign == 1 and count == 0:
            raise MalformedPairing(3 * i, "negative zero")
        out.append(-count if sign else count)
    return out[0], out[1], i


def cantor_unpair(z: DecimalReal) -> tuple[DecimalReal, DecimalReal]:
    a0, b0, _ = _read_boxes(z)

    def component(offset: int, a: int):
        def produce(k: int):
            if k == 0:
                return 0, a
            t = z.floor_scaled(3 * k) % pow10(3 * k)
            s = str(t).zfill(3 * k)
            digits = s[offset::3]
            return k, a * pow10(k) + int(digits)
        return produce

    x = DecimalReal(producer=component(0, a0), backing=Backing.ALGORITHMIC, label="unpair.x",
                    promise="first component of a pairing")
    y = DecimalReal(producer=component(1, b0), backing=Backing.ALGORITHMIC, label="unpair.y",
                    promise="second component of a pairing")
    return x, y
