"""Reference evaluator on nested rational intervals.

Nothing here touches the digit-scan arithmetic: constants come from their own
series (Machin's formula for pi, the factorial series for e, Newton brackets
for square roots) and operations are plain interval arithmetic on fractions.
It is slow on purpose and exists to check the other modules.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .decimal_stream import DecimalReal, DomainError, Undetermined, from_scaled
from .exact_scaled import ScaledDecimal
from .expr import Binary, Call, Const, Expr, Number, Paren, Unary, parse_expr
from .intervals import RationalInterval

__all__ = [
    "IntervalReal",
    "OracleUnsupported",
    "oracle_pi",
    "oracle_e",
    "oracle_sqrt",
    "interval_eval",
    "oracle_for",
    "Certified",
    "Mismatch",
    "Inconclusive",
    "certify_digits",
    "SelfCheckReport",
    "exhaustive_small_check",
]

REFINE_CAP = 400  # extra decimal places tried before giving up on a width target


class OracleUnsupported(ValueError):
    """The expression uses something the oracle has no independent model of."""


def _unit(s: int) -> Fraction:
    return Fraction(1, 10**s)


def _outward(iv: RationalInterval, s: int) -> RationalInterval:
    d = 10**s
    lo = Fraction(iv.lo.numerator * d // iv.lo.denominator, d)
    hi = Fraction(-((-iv.hi.numerator * d) // iv.hi.denominator), d)
    return RationalInterval(lo, hi)


class IntervalReal:
    """A real known through ``refine(s)``: a closed rational interval of
    width at most ``10**-s`` containing it.  Successive answers are nested."""

    def __init__(self, enclose: Callable[[int], RationalInterval], label: str = ""):
        self._enclose = enclose
        self._best: RationalInterval | None = None
        self.label = label

    @classmethod
    def exact(cls, q) -> IntervalReal:
        point = RationalInterval.point(Fraction(q))
        return cls(lambda s: point, label=str(q))

    def refine(self, s: int) -> RationalInterval:
        best = self._best
        if best is not None and best.width <= _unit(s):
            return best
        iv = self._enclose(s)
        if iv.width > _unit(s):
            raise ArithmeticError(f"enclosure for {self.label} wider than 1e-{s}")
        if best is not None:
            iv = iv.intersect(best)
        self._best = iv
        return iv

    # helpers for building composite values
    def _adaptive(self, other, combine, s):
        for extra in itertools.count(1):
            if extra > REFINE_CAP:
                raise ArithmeticError(f"no enclosure of width 1e-{s} within {REFINE_CAP} extra places")
            iv = combine(self.refine(s + extra), None if other is None else other.refine(s + extra))
            if iv.width <= _unit(s + 1):
                return _outward(iv, s + 1)
            if iv.width <= _unit(s):
                return iv

    def __add__(self, other: IntervalReal) -> IntervalReal:
        return IntervalReal(lambda s: _outward(self.refine(s + 1) + other.refine(s + 1), s + 1),
                            f"({self.label} + {other.label})")

    def __sub__(self, other: IntervalReal) -> IntervalReal:
        return IntervalReal(lambda s: _outward(self.refine(s + 1) - other.refine(s + 1), s + 1),
                            f"({self.label} - {other.label})")

    def __neg__(self) -> IntervalReal:
        return IntervalReal(lambda s: -self.refine(s), f"-{self.label}")

    def __mul__(self, other: IntervalReal) -> IntervalReal:
        return IntervalReal(lambda s: self._adaptive(other, lambda a, b: a * b, s),
                            f"({self.label} * {other.label})")

    def reciprocal(self) -> IntervalReal:
        def enclose(s):
            for extra in range(1, REFINE_CAP + 1):
                iv = self.refine(s + extra)
                if iv.lo <= 0 <= iv.hi:
                    continue
                inv = RationalInterval(1 / iv.hi, 1 / iv.lo)
                if inv.width <= _unit(s + 1):
                    return _outward(inv, s + 1)
                if inv.width <= _unit(s):
                    return inv
            raise ZeroDivisionError(f"{self.label} not separated from 0 after refinement cap")

        return IntervalReal(enclose, f"1/{self.label}")

    def __truediv__(self, other: IntervalReal) -> IntervalReal:
        return self * other.reciprocal()

    def sqrt(self) -> IntervalReal:
        def enclose(s):
            iv = self.refine(2 * s + 2)
            if iv.hi < 0:
                raise ValueError(f"square root of negative {self.label}")
            lo = _newton_sqrt(max(iv.lo, Fraction(0)), s + 2).lo
            hi = _newton_sqrt(iv.hi, s + 2).hi
            return RationalInterval(lo, hi)

        return IntervalReal(enclose, f"sqrt({self.label})")

    @staticmethod
    def minimum(xs: list[IntervalReal]) -> IntervalReal:
        def enclose(s):
            ivs = [x.refine(s) for x in xs]
            return RationalInterval(min(i.lo for i in ivs), min(i.hi for i in ivs))

        return IntervalReal(enclose, "glb(" + ", ".join(x.label for x in xs) + ")")


# -- constants -----------------------------------------------------------------


def _int_root(n: int) -> int:
    """floor(sqrt(n)) by integer Newton iteration from above."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 1) // 2)
    while True:
        y = (x + n // x) // 2
        if y >= x:
            return x
        x = y


def _newton_sqrt(q: Fraction, s: int) -> RationalInterval:
    """Interval of width <= 10**-s around sqrt(q) from Newton steps:
    for any x > 0, sqrt(q) lies between q/x and x."""
    if q == 0:
        return RationalInterval.point(0)
    rn, rd = _int_root(q.numerator), _int_root(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return RationalInterval.point(Fraction(rn, rd))
    grid = 10 ** (s + 2)
    x = Fraction(max(q, Fraction(1)))
    while True:
        lo, hi = sorted((x, q / x))
        if hi - lo <= _unit(s + 1):
            return _outward(RationalInterval(lo, hi), s + 1)
        x = (x + q / x) / 2
        x = Fraction(-((-x.numerator * grid) // x.denominator), grid)  # stay on or above sqrt(q)
        if x * x < q:
            x += Fraction(1, grid)


def _arctan_inv(n: int, s: int) -> RationalInterval:
    """arctan(1/n) for n >= 2 from the alternating series; partial sums of
    odd and even length bracket the value."""
    total, term, k = Fraction(0), Fraction(1, n), 0
    eps = _unit(s + 3)
    while True:
        nxt = total + (term if k % 2 == 0 else -term) / (2 * k + 1)
        if term / (2 * k + 1) < eps:
            lo, hi = sorted((total, nxt))
            return RationalInterval(lo, hi)
        total, term, k = nxt, term / (n * n), k + 1


def oracle_pi() -> IntervalReal:
    def enclose(s):
        a = _arctan_inv(5, s + 2)
        b = _arctan_inv(239, s + 2)
        return _outward(a * 16 - b * 4, s + 1)

    return IntervalReal(enclose, "pi")


def oracle_e() -> IntervalReal:
    def enclose(s):
        total, fact, n = Fraction(0), 1, 0
        while True:
            total += Fraction(1, fact)
            n += 1
            fact *= n
            # remainder after 1/(n-1)! is below 2/n!
            if Fraction(2, fact) < _unit(s + 2):
                return _outward(RationalInterval(total, total + Fraction(2, fact)), s + 1)

    return IntervalReal(enclose, "e")


def oracle_sqrt(q) -> IntervalReal:
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    return IntervalReal(lambda s: _newton_sqrt(q, s), f"sqrt({q})")


# -- expressions -----------------------------------------------------------------

_CONSTS: dict[str, Callable[[], IntervalReal]] = {
    "pi": oracle_pi,
    "e": oracle_e,
    "sqrt2": lambda: oracle_sqrt(2),
}


def oracle_for(e: Expr | str) -> IntervalReal:
    """Build the interval model of an expression (AST or source text)."""
    if isinstance(e, str):
        e = parse_expr(e)
    if isinstance(e, Number):
        return IntervalReal.exact(e.value.to_fraction())
    if isinstance(e, Const):
        return _CONSTS[e.name]()
    if isinstance(e, Paren):
        return oracle_for(e.inner)
    if isinstance(e, Unary):
        x = oracle_for(e.arg)
        if e.op == "neg":
            return -x
        if e.op == "recip":
            return x.reciprocal()
        if isinstance(e.arg, Number):
            return oracle_sqrt(e.arg.value.to_fraction())
        return x.sqrt()
    if isinstance(e, Binary):
        a, b = oracle_for(e.left), oracle_for(e.right)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        return a / b
    if isinstance(e, Call) and e.name == "glb":
        return IntervalReal.minimum([oracle_for(a) for a in e.args])
    raise OracleUnsupported(f"no interval model for {type(e).__name__} {getattr(e, 'name', '')}".strip())


def interval_eval(e: Expr | str, scale: int) -> RationalInterval:
    """Enclosure of the exact value of ``e`` with width at most ``10**-scale``.

    Raises ZeroDivisionError when a divisor cannot be separated from 0.
    """
    return oracle_for(e).refine(scale)


# -- digit certification -----------------------------------------------------------


@dataclass(frozen=True)
class Certified:
    k: int
    enclosure: RationalInterval


@dataclass(frozen=True)
class Mismatch:
    position: int
    enclosure: RationalInterval


@dataclass(frozen=True)
class Inconclusive:
    reason: str


def certify_digits(
    x: DecimalReal, k: int, reference: IntervalReal | Expr | str, scale_guard: int = 4, max_guard: int = 64
):
    """Compare ``truncation(x, k)`` against an independent enclosure.

    Certified when ``[x_k, x_k + 10^-k)`` contains the enclosure; Mismatch at
    the first position whose digit cell misses the enclosure; Inconclusive
    when the digits are undetermined or the value sits so close to a cell
    boundary that ``max_guard`` extra places cannot separate it.
    """
    ref = reference if isinstance(reference, IntervalReal) else oracle_for(reference)
    try:
        t = x.floor_scaled(k)
    except Undetermined as exc:
        return Inconclusive(f"digits undetermined: {exc}")
    guard = scale_guard
    while True:
        iv = ref.refine(k + guard)
        for j in range(k + 1):
            d = 10**j
            lo, hi = Fraction(x.floor_scaled(j), d), Fraction(x.floor_scaled(j) + 1, d)
            if iv.hi < lo or iv.lo >= hi:
                return Mismatch(j, iv)
        cell_lo, cell_hi = Fraction(t, 10**k), Fraction(t + 1, 10**k)
        if cell_lo <= iv.lo and iv.hi < cell_hi:
            return Certified(k, iv)
        if guard >= max_guard:
            return Inconclusive(f"enclosure {iv} straddles a digit boundary at position {k}")
        guard *= 2


# -- exhaustive check on small terminating decimals ----------------------------------


@dataclass
class SelfCheckReport:
    max_scale: int
    max_int: int
    values: int = 0
    pairs: int = 0
    triples: int = 0
    checks: dict[str, int] = field(default_factory=dict)
    counterexamples: int = 0
    first_counterexample: str | None = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.counterexamples == 0

    def record(self, law: str, passed: bool, detail: Callable[[], str]) -> None:
        self.checks[law] = self.checks.get(law, 0) + 1
        if not passed:
            self.counterexamples += 1
            if self.first_counterexample is None:
                self.first_counterexample = f"{law}: {detail()}"

    def summary(self) -> str:
        laws = ", ".join(f"{k}={v}" for k, v in self.checks.items())
        verdict = "ok" if self.ok else f"FAILED ({self.first_counterexample})"
        return (
            f"selfcheck scale<={self.max_scale} |a0|<={self.max_int}: {self.values} values, "
            f"{self.pairs} pairs, {self.triples} triples; {self.counterexamples} counterexamples; "
            f"{verdict}; {self.seconds:.1f}s\n  checks: {laws}"
        )


def _grid(max_scale: int, max_int: int) -> list[Fraction]:
    d = 10**max_scale
    return [Fraction(a0 * d + m, d) for a0 in range(-max_int, max_int + 1) for m in range(d)]


def _floor(q: Fraction, k: int) -> int:
    return q.numerator * 10**k // q.denominator


WORKED_PAIRS = ((ScaledDecimal.parse("(-8).765"), ScaledDecimal.parse("5.678")),)


def exhaustive_small_check(max_scale: int = 2, max_int: int = 1, digits: int = 8) -> SelfCheckReport:
    """Enumerate every terminating decimal with at most ``max_scale`` places
    and ``|a0| <= max_int``.

    Pairs: the digit-scan add/sub/mul/div (with the rational shortcut turned
    off) must match the rational result through ``digits`` places beyond the
    operands' scale; commutativity, identities and inverses are checked too.
    Triples: associativity of + and *, and distributivity, checked exactly
    on the full grid, and through the digit scans on the one-place grid.
    """
    from . import arithmetic as ar

    started = time.perf_counter()
    rep = SelfCheckReport(max_scale, max_int)
    vals = _grid(max_scale, max_int)
    rep.values = len(vals)
    reals = [from_scaled(ScaledDecimal.from_fraction(v)) for v in vals]
    depth = 2 * max_scale + digits

    def digits_match(law, got: DecimalReal, want: Fraction, a, b):
        rep.record(law, got.floor_scaled(depth) == _floor(want, depth), lambda: f"{a}, {b}")

    pairs = [(a, b, ra, rb) for a, ra in zip(vals, reals) for b, rb in zip(vals, reals)]
    pairs += [(a.to_fraction(), b.to_fraction(), from_scaled(a), from_scaled(b)) for a, b in WORKED_PAIRS]
    for a, b, ra, rb in pairs:
        rep.pairs += 1
        s = ar.add(ra, rb, exact=False)
        digits_match("add", s, a + b, a, b)
        digits_match("sub", ar.sub(ra, rb, exact=False), a - b, a, b)
        p = ar.mul(ra, rb, exact=False)
        digits_match("mul", p, a * b, a, b)
        rep.record("commute+", ar.add(rb, ra, exact=False).floor_scaled(depth) == s.floor_scaled(depth),
                   lambda: f"{a}, {b}")
        rep.record("commute*", ar.mul(rb, ra, exact=False).floor_scaled(depth) == p.floor_scaled(depth),
                   lambda: f"{a}, {b}")
        if b != 0:
            digits_match("div", ar.div(ra, rb, exact=False), a / b, a, b)
        else:
            try:
                ar.div(ra, rb, exact=False)
                rep.record("div-by-zero", False, lambda: f"{a} / 0 did not raise")
            except DomainError:
                rep.record("div-by-zero", True, str)

    one = from_scaled(ScaledDecimal(1))
    zero = from_scaled(ScaledDecimal(0))
    for a, ra in zip(vals, reals):
        rep.record("identity+", ar.add(ra, zero, exact=False).floor_scaled(depth) == _floor(a, depth), lambda: str(a))
        rep.record("identity*", ar.mul(ra, one, exact=False).floor_scaled(depth) == _floor(a, depth), lambda: str(a))
        rep.record("inverse+", ar.add(ra, ar.negate(ra)).fraction == 0, lambda: str(a))
        if a != 0:
            rep.record("inverse*", ar.mul(ra, ar.reciprocal(ra)).fraction == 1, lambda: str(a))

    _stream_triples(rep, min(max_scale, 1), max_int, depth)
    _triple_laws(rep, vals, max_scale)
    rep.seconds = time.perf_counter() - started
    return rep


def _stream_triples(rep: SelfCheckReport, scale: int, max_int: int, depth: int) -> None:
    """Associativity and distributivity through the digit-scan operations
    (rational shortcut off) on the coarser grid of ``scale`` places."""
    from . import arithmetic as ar

    vals = _grid(scale, max_int)
    reals = [from_scaled(ScaledDecimal.from_fraction(v)) for v in vals]
    for (a, x), (b, y), (c, z) in itertools.product(zip(vals, reals), repeat=3):
        left = ar.add(ar.add(x, y, exact=False), z, exact=False).floor_scaled(depth)
        right = ar.add(x, ar.add(y, z, exact=False), exact=False).floor_scaled(depth)
        rep.record("stream-assoc+", left == right == _floor(a + b + c, depth), lambda: f"{a}, {b}, {c}")
        left = ar.mul(x, ar.add(y, z, exact=False), exact=False).floor_scaled(depth)
        right = ar.add(ar.mul(x, y, exact=False), ar.mul(x, z, exact=False), exact=False).floor_scaled(depth)
        rep.record("stream-distrib", left == right == _floor(a * (b + c), depth), lambda: f"{a}, {b}, {c}")


def _triple_laws(rep: SelfCheckReport, vals: list[Fraction], max_scale: int) -> None:
    """Field laws over all triples on integer mantissas at a common scale.

    With ``m(x) = x * 10^s`` an integer, sums live at scale s and products at
    scale 2s, so every comparison is exact.  Ints keep 27 million triples
    within seconds, where fraction objects would take many minutes.
    """
    d = 10**max_scale
    ms = [int(v * d) for v in vals]
    n = len(ms)
    assoc_add = assoc_mul = distrib = 0
    bad: tuple[str, int, int, int] | None = None
    for x in ms:
        for y in ms:
            xy, x_plus_y = x * y, x + y
            for z in ms:
                # (x+y)+z = x+(y+z) at scale s
                if x_plus_y + z != x + (y + z):
                    bad = bad or ("assoc+", x, y, z)
                # (xy)z = x(yz) at scale 3s
                if xy * z != x * (y * z):
                    bad = bad or ("assoc*", x, y, z)
                # x(y+z) = xy + xz at scale 2s
                if x * (y + z) != xy + x * z:
                    bad = bad or ("distrib", x, y, z)
    total = n**3
    rep.triples = total
    for law in ("assoc+", "assoc*", "distrib"):
        rep.checks[law] = rep.checks.get(law, 0) + total
    if bad is not None:
        law, x, y, z = bad
        rep.counterexamples += 1
        rep.first_counterexample = rep.first_counterexample or (
            f"{law}: {Fraction(x, d)}, {Fraction(y, d)}, {Fraction(z, d)}"
        )
