"""Infinite decimals ``a0.a1a2a3...`` as memoized digit producers.

Every value is queried through :meth:`DecimalReal.floor_scaled`, which returns
the integer ``floor(x * 10**k)``; the truncation ``x_k`` and the digit
``theta_k(x)`` are both read off it.  Values never carry a tail of 9s.

Three kinds of backing exist:

* terminating -- built from a :class:`ScaledDecimal`;
* rational -- ``p/q`` expanded by long division;
* algorithmic -- an arbitrary producer plus a promise that it describes a
  valid element (digits in 0..9, no all-9 tail).  The promise cannot be
  checked and is recorded as text on the value.

Producers of algorithmic values are called with a requested position ``k``
and answer ``(j, floor(x * 10**j))`` for some ``j >= k``; answering deeper
than asked is how they hand over whole blocks of digits.  A producer may
instead answer with a :class:`~fractions.Fraction`, meaning it has identified
the value exactly; the value then switches to exact evaluation.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Union

from .exact_scaled import ScaledDecimal, pow10, terminating_scale

__all__ = [
    "DEFAULT_FUEL",
    "Backing",
    "DecimalReal",
    "Undetermined",
    "DomainError",
    "Determined",
    "Exhausted",
    "digit_outcome",
    "from_scaled",
    "from_rational",
    "from_fraction",
    "from_periodic",
    "from_digits",
    "from_truncations",
    "as_algorithmic",
    "shift",
    "Order",
    "Comparison",
    "cmp_with_fuel",
    "SignKind",
    "Sign",
    "sign_with_fuel",
    "rational_period",
    "format_dump",
    "parse_dump",
    "ZERO",
    "ONE",
]

DEFAULT_FUEL = 1000

ProducerResult = Union[tuple[int, int], Fraction]


class Undetermined(ArithmeticError):
    """A fuel-bounded scan reached its horizon without settling a digit."""

    def __init__(self, horizon: int, position: int | None = None, what: str = ""):
        self.horizon = horizon
        self.position = position
        self.what = what
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"undetermined{where} at horizon {horizon}" + (f" ({what})" if what else ""))


class DomainError(ZeroDivisionError):
    """Division or reciprocal of a value not certified nonzero."""


class Backing(enum.Enum):
    TERMINATING = "terminating"
    RATIONAL = "rational"
    ALGORITHMIC = "algorithmic"


class DecimalReal:
    """An element ``a0.a1a2...`` of the decimal reals.

    Do not call the constructor directly; use :func:`from_scaled`,
    :func:`from_rational`, :func:`from_digits`, :func:`from_truncations` or the
    arithmetic functions.
    """

    def __init__(
        self,
        *,
        exact: Fraction | None = None,
        producer: Callable[[int], ProducerResult] | None = None,
        backing: Backing,
        terminates_by: int | None = None,
        label: str = "",
        promise: str = "",
    ):
        if (exact is None) == (producer is None):
            raise ValueError("exactly one of exact / producer is required")
        self._exact = exact
        self._producer = producer
        self.backing = backing
        self.label = label
        self.promise = promise
        if exact is not None:
            terminates_by = terminating_scale(exact)
        self.terminates_by = terminates_by
        self._depth = -1
        self._trunc = 0
        self._lock = threading.RLock()

    # -- core query -------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        """True when the value is known as a rational number."""
        return self._exact is not None

    @property
    def fraction(self) -> Fraction | None:
        return self._exact

    def floor_scaled(self, k: int) -> int:
        """``floor(x * 10**k)``, the mantissa of the truncation ``x_k``."""
        if k < 0:
            raise ValueError("position must be non-negative")
        q = self._exact
        if q is not None:
            return q.numerator * pow10(k) // q.denominator
        with self._lock:
            if k <= self._depth:
                return self._trunc // pow10(self._depth - k)
            res = self._producer(k)
            if isinstance(res, Fraction):
                self._resolve(res)
                return res.numerator * pow10(k) // res.denominator
            j, t = res
            if j < k:
                raise RuntimeError(f"producer answered position {j} for request {k}")
            if j > self._depth:
                self._depth, self._trunc = j, t
            return self._trunc // pow10(self._depth - k)

    def _resolve(self, q: Fraction) -> None:
        if self._depth >= 0 and q.numerator * pow10(self._depth) // q.denominator != self._trunc:
            raise RuntimeError("exact identification contradicts emitted digits")
        self._exact = q
        self.terminates_by = terminating_scale(q)
        self._producer = None

    # -- derived views ----------------------------------------------------

    def truncation(self, k: int) -> ScaledDecimal:
        return ScaledDecimal(self.floor_scaled(k), k)

    def digit(self, k: int) -> int:
        t = self.floor_scaled(k)
        return t if k == 0 else t % 10

    @property
    def integer_part(self) -> int:
        return self.floor_scaled(0)

    def digits(self, n: int) -> list[int]:
        """Fractional digits ``a1..an``."""
        if n == 0:
            return []
        t = self.floor_scaled(n) % pow10(n)
        return [int(c) for c in str(t).zfill(n)]

    def render(self, n: int) -> str:
        """The truncation at ``n`` places in floor form, e.g. ``(-2).443``."""
        return str(self.truncation(n))

    def __repr__(self) -> str:
        name = self.label or self.backing.value
        if self._exact is not None:
            return f"<DecimalReal {name} = {self._exact}>"
        if self._depth >= 0:
            shown = min(self._depth, 20)
            return f"<DecimalReal {name} {self.render(shown)}...>"
        return f"<DecimalReal {name} (unevaluated)>"

    # -- operator sugar ---------------------------------------------------

    def __add__(self, other):
        from .arithmetic import add
        return add(self, _coerce(other))

    def __radd__(self, other):
        from .arithmetic import add
        return add(_coerce(other), self)

    def __sub__(self, other):
        from .arithmetic import sub
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        from .arithmetic import sub
        return sub(_coerce(other), self)

    def __mul__(self, other):
        from .arithmetic import mul
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        from .arithmetic import mul
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        from .arithmetic import div
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        from .arithmetic import div
        return div(_coerce(other), self)

    def __neg__(self):
        from .arithmetic import negate
        return negate(self)


def _coerce(v) -> DecimalReal:
    if isinstance(v, DecimalReal):
        return v
    if isinstance(v, ScaledDecimal):
        return from_scaled(v)
    if isinstance(v, (int, Fraction)):
        return from_fraction(Fraction(v))
    raise TypeError(f"cannot use {type(v).__name__} as a decimal real")


# -- constructors ------------------------------------------------------------


def from_scaled(a: ScaledDecimal) -> DecimalReal:
    r = DecimalReal(exact=a.to_fraction(), backing=Backing.TERMINATING, label=str(a))
    return r


def from_fraction(q: Fraction) -> DecimalReal:
    """Exact value; terminating backing when ``q`` has a finite expansion."""
    q = Fraction(q)
    kind = Backing.TERMINATING if terminating_scale(q) is not None else Backing.RATIONAL
    return DecimalReal(exact=q, backing=kind, label=str(q))


def from_rational(p: int, q: int) -> DecimalReal:
    if q == 0:
        raise DomainError("denominator must be nonzero")
    if q < 0:
        p, q = -p, -q
    return DecimalReal(exact=Fraction(p, q), backing=Backing.RATIONAL, label=f"{p}/{q}")


def from_periodic(a0: int, prefix: str, period: str) -> DecimalReal:
    """``a0.prefix(period)(period)...`` as a rational value.

    A period of all 9s would describe a decimal outside the ambient set and
    is rejected.
    """
    if not period or not period.isdigit() or (prefix and not prefix.isdigit()):
        raise ValueError("prefix and period must be digit strings, period non-empty")
    if set(period) == {"9"}:
        raise ValueError("a repeating tail of 9s is not an element of the decimal reals")
    a, b = len(prefix), len(period)
    head = Fraction(int(prefix or "0"), pow10(a))
    tail = Fraction(int(period), (pow10(b) - 1) * pow10(a))
    q = a0 + head + tail
    return DecimalReal(exact=q, backing=Backing.RATIONAL, label=f"{a0}.{prefix}({period})")


class _DigitFunction:
    def __init__(self, a0: int, fn: Callable[[int], int], block: int):
        self.fn = fn
        self.block = block
        self.depth = 0
        self.trunc = a0

    def __call__(self, k: int):
        target = max(k, self.depth + self.block)
        t = self.trunc
        for j in range(self.depth + 1, target + 1):
            d = self.fn(j)
            if not 0 <= d <= 9:
                raise ValueError(f"digit function returned {d} at position {j}")
            t = t * 10 + d
        self.depth, self.trunc = target, t
        return target, t


def from_digits(
    a0: int,
    digit_fn: Callable[[int], int],
    *,
    promise: str = "caller guarantees infinitely many digits below 9",
    label: str = "",
    block: int = 16,
) -> DecimalReal:
    """Algorithmic value with integer part ``a0`` and digit ``digit_fn(k)``, k >= 1."""
    return DecimalReal(
        producer=_DigitFunction(a0, digit_fn, block),
        backing=Backing.ALGORITHMIC,
        promise=promise,
        label=label,
    )


def from_truncations(
    fn: Callable[[int], int], *, promise: str, label: str = "", terminates_by: int | None = None
) -> DecimalReal:
    """Algorithmic value from ``fn(k) = floor(x * 10**k)``."""
    return DecimalReal(
        producer=lambda k: (k, fn(k)),
        backing=Backing.ALGORITHMIC,
        promise=promise,
        label=label,
        terminates_by=terminates_by,
    )


def as_algorithmic(x: DecimalReal, label: str = "") -> DecimalReal:
    """Copy of ``x`` that hides its backing, forcing digit-scan arithmetic."""
    def produce(k):
        return k, x.floor_scaled(k)

    return DecimalReal(
        producer=produce,
        backing=Backing.ALGORITHMIC,
        promise=f"digits of {x.label or 'a value'}",
        label=label or f"alg({x.label})",
    )


def shift(x: DecimalReal, j: int) -> DecimalReal:
    """``x * 10**j`` for any integer ``j``; exact, needs no fuel."""
    if j == 0:
        return x
    if x.is_exact:
        return from_fraction(x.fraction * (Fraction(pow10(j)) if j > 0 else Fraction(1, pow10(-j))))

    scale = Fraction(pow10(j)) if j > 0 else Fraction(1, pow10(-j))

    def produce(k):
        m = k + j
        t = x.floor_scaled(max(m, 0))
        if x.is_exact:  # identified while answering
            return x.fraction * scale
        return k, t if m >= 0 else t // pow10(-m)

    tb = x.terminates_by
    return DecimalReal(
        producer=produce,
        backing=Backing.ALGORITHMIC,
        promise=x.promise,
        label=f"({x.label})e{j}",
        terminates_by=None if tb is None else max(tb - j, 0),
    )


ZERO = from_scaled(ScaledDecimal(0))
ONE = from_scaled(ScaledDecimal(1))


# -- fuel-bounded outcomes ---------------------------------------------------


@dataclass(frozen=True)
class Determined:
    digit: int


@dataclass(frozen=True)
class Exhausted:
    horizon: int


def digit_outcome(x: DecimalReal, k: int) -> Determined | Exhausted:
    try:
        return Determined(x.digit(k))
    except Undetermined as e:
        return Exhausted(e.horizon)


class Order(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    INDISTINGUISHABLE = "indistinguishable"


@dataclass(frozen=True)
class Comparison:
    order: Order
    depth: int


def _probe_positions(fuel: int) -> Iterable[int]:
    k = 0
    while k < fuel:
        yield k
        k = 2 * k + 1
    yield fuel


def cmp_with_fuel(x: DecimalReal, y: DecimalReal, fuel: int = DEFAULT_FUEL) -> Comparison:
    """Dictionary order decided from truncations up to position ``fuel``.

    ``depth`` is a position at which the truncations separate, or ``fuel``
    when they agree all the way.
    """
    for k in _probe_positions(fuel):
        a, b = x.floor_scaled(k), y.floor_scaled(k)
        if a != b:
            return Comparison(Order.LESS if a < b else Order.GREATER, k)
    return Comparison(Order.INDISTINGUISHABLE, fuel)


class SignKind(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    ZERO_AT_HORIZON = "indistinguishable-from-zero"


@dataclass(frozen=True)
class Sign:
    kind: SignKind
    depth: int  # position of the first nonzero digit, or the horizon

    @property
    def certified_nonzero(self) -> bool:
        return self.kind is not SignKind.ZERO_AT_HORIZON


def sign_with_fuel(x: DecimalReal, fuel: int = DEFAULT_FUEL) -> Sign:
    a0 = x.integer_part
    if a0 < 0:
        return Sign(SignKind.NEGATIVE, 0)
    if a0 >= 1:
        return Sign(SignKind.POSITIVE, 0)
    if x.is_exact:
        q = x.fraction
        if q == 0:
            return Sign(SignKind.ZERO_AT_HORIZON, fuel)
        # first nonzero digit of 0 < q < 1
        k = 1
        while q.numerator * pow10(k) < q.denominator:
            k += 1
        if k <= fuel:
            return Sign(SignKind.POSITIVE, k)
        return Sign(SignKind.ZERO_AT_HORIZON, fuel)
    lo = 0
    for k in _probe_positions(fuel):
        if k and x.floor_scaled(k) != 0:
            # first nonzero digit lies in (lo, k]
            while k - lo > 1:
                mid = (lo + k) // 2
                if x.floor_scaled(mid) != 0:
                    k = mid
                else:
                    lo = mid
            return Sign(SignKind.POSITIVE, k)
        lo = k
    return Sign(SignKind.ZERO_AT_HORIZON, fuel)


# -- rational structure ------------------------------------------------------


def rational_period(q: Fraction) -> tuple[int, int]:
    """(pre-period length, period length) of the decimal expansion of ``q``.

    Terminating values report period 1 (the repeating 0).
    """
    d = Fraction(q).denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    pre = max(twos, fives)
    if d == 1:
        return pre, 1
    order, r = 1, 10 % d
    while r != 1:
        r = r * 10 % d
        order += 1
    return pre, order


# -- digit dump format -------------------------------------------------------

DUMP_LINE = 50


def format_dump(x: DecimalReal, n: int) -> str:
    """Header ``D10 v1 a0=<int>`` then the fractional digits, 50 per line."""
    frac = "".join(map(str, x.digits(n)))
    lines = [f"D10 v1 a0={x.integer_part}"]
    lines += [frac[i:i + DUMP_LINE] for i in range(0, len(frac), DUMP_LINE)]
    return "\n".join(lines) + "\n"


def parse_dump(text: str) -> tuple[int, str]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("D10 v1 a0="):
        raise ValueError("missing 'D10 v1 a0=' header")
    a0 = int(lines[0][len("D10 v1 a0="):])
    body = "".join(line.strip() for line in lines[1:])
    if body and not body.isdigit():
        raise ValueError("dump body must contain only digits")
    return a0, body
