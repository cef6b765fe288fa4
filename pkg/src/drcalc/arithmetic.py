"""Left-to-right arithmetic on infinite decimals.

Each operation emits the truncation of its result at position ``k`` by
scanning trial positions ``n = k+1, k+2, ...`` for a *settling* digit of an
exactly computable trial value built from operand truncations:

=========  ==============================  ===================  ===========
operation  trial value at ``n``            settles when         emits
=========  ==============================  ===================  ===========
add        ``x_n + y_n``                   digit ``n`` != 9     ``(.)_{n-1}``
sub        ``x_n - y_n``                   digit ``n`` of x != digit of y
mul        ``x_{n+s} * y_{n+s}``           digit ``n`` != 9     ``(.)_{n-1}``
div        ``x_{2n} / y_n``                digit ``n`` > 0      ``(.)_{n-1}``
=========  ==============================  ===================  ===========

When no trial settles the result terminates.  That is
only detectable when both operands are known to terminate, so for exact
operands the functions short-circuit to fraction arithmetic by default; for
algorithmic operands the scan stops at ``k + fuel`` and raises
:class:`Undetermined`.
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from .decimal_stream import (
    DEFAULT_FUEL,
    ZERO,
    Backing,
    DecimalReal,
    DomainError,
    SignKind,
    Undetermined,
    from_fraction,
    shift,
    sign_with_fuel,
)
from .exact_scaled import pow10

__all__ = [
    "add",
    "sub",
    "negate",
    "mul",
    "reciprocal",
    "div",
    "product_scale",
    "product_constant",
    "product_bound",
    "theta_trace",
    "scan_depths",
    "ScanMeter",
    "metered",
]


# -- scan accounting ---------------------------------------------------------


@dataclass
class ScanMeter:
    """Deepest scan offset ``n - k`` seen while the meter was active."""

    max_depth: int = 0
    scans: int = 0


_meter: contextvars.ContextVar[ScanMeter | None] = contextvars.ContextVar("scan_meter", default=None)


@contextmanager
def metered():
    meter = ScanMeter()
    token = _meter.set(meter)
    try:
        yield meter
    finally:
        _meter.reset(token)


def _note(depth: int) -> None:
    m = _meter.get()
    if m is not None:
        m.scans += 1
        if depth > m.max_depth:
            m.max_depth = depth


# -- scanning producers ------------------------------------------------------


class _Scan:
    label = "scan"

    def __init__(self, fuel: int):
        if fuel < 1:
            raise ValueError("fuel must be a positive integer")
        self.fuel = fuel

    def theta(self, n: int) -> tuple[int, int]:
        """(digit n of the trial value, trial value truncated at n-1)."""
        raise NotImplementedError

    def settles(self, theta: int) -> bool:
        return theta != 9

    def terminal(self, n: int) -> Fraction | None:
        return None

    def __call__(self, k: int):
        horizon = k + self.fuel
        for n in range(k + 1, horizon + 1):
            th, t = self.theta(n)
            if self.settles(th):
                _note(n - k)
                return n - 1, t
            q = self.terminal(n)
            if q is not None:
                _note(n - k)
                return q
        raise Undetermined(horizon, k, self.label)


def _both_terminate(x: DecimalReal, y: DecimalReal) -> int | None:
    if x.terminates_by is None or y.terminates_by is None:
        return None
    return max(x.terminates_by, y.terminates_by)


class _Add(_Scan):
    label = "add"

    def __init__(self, x, y, fuel):
        super().__init__(fuel)
        self.x, self.y = x, y

    def theta(self, n):
        s = self.x.floor_scaled(n) + self.y.floor_scaled(n)
        return s % 10, s // 10


class _Sub(_Scan):
    label = "sub"

    def __init__(self, x, y, fuel):
        super().__init__(fuel)
        self.x, self.y = x, y

    def theta(self, n):
        d = self.x.floor_scaled(n) - self.y.floor_scaled(n)
        return d % 10, d // 10

    def settles(self, theta):
        return theta != 0

    def terminal(self, n):
        # past the point where both operands end, every digit pair agrees;
        # checked per call since an operand may be identified exactly later
        m = _both_terminate(self.x, self.y)
        if m is not None and n > m:
            return Fraction(self.x.floor_scaled(m) - self.y.floor_scaled(m), pow10(m))
        return None


class _NonNegProduct(_Scan):
    label = "mul"

    def __init__(self, x, y, s, fuel):
        super().__init__(fuel)
        self.x, self.y, self.s = x, y, s

    def theta(self, n):
        s = self.s
        p = self.x.floor_scaled(n + s) * self.y.floor_scaled(n + s)
        t = p // pow10(n + 2 * s)
        return t % 10, t // 10


class _ReducedQuotient(_Scan):
    """x / y for 0 <= x <= 1 <= y."""

    label = "div"

    def __init__(self, x, y, fuel):
        super().__init__(fuel)
        self.x, self.y = x, y

    def theta(self, n):
        q = self.x.floor_scaled(2 * n) // self.y.floor_scaled(n)
        return q % 10, q // 10

    def settles(self, theta):
        return theta > 0

    def terminal(self, n):
        tx, ty = self.x.terminates_by, self.y.terminates_by
        if tx is not None and ty is not None and 2 * n >= tx and n >= ty:
            return Fraction(self.x.floor_scaled(2 * n) * pow10(n), self.y.floor_scaled(n) * pow10(2 * n))
        return None

    def __call__(self, k):
        try:
            return super().__call__(k)
        except Undetermined as first:
            try:
                alt = mul(self.x, reciprocal(self.y, self.fuel), self.fuel)
                return k, alt.floor_scaled(k)
            except Undetermined:
                raise first from None


class _Reciprocal:
    """1/x for x certified positive.

    The result at position k is the largest scale-k grid value t with
    x * t <= 1.  Both candidate comparisons are settled from a truncation
    x_n, looking deeper until x_n separates them.
    """

    def __init__(self, x, fuel):
        self.x, self.fuel = x, fuel

    def __call__(self, k):
        x = self.x
        horizon = k + self.fuel
        tb = x.terminates_by
        for n in range(k + 1, horizon + 1):
            big_x = x.floor_scaled(n)
            if big_x == 0:
                continue
            if tb is not None and n >= tb:
                _note(n - k)
                return Fraction(pow10(n), big_x)
            scale = pow10(k + n)
            f = scale // big_x
            # x in [X, X+1) / 10^n  =>  10^k / x in (scale/(X+1), scale/X]
            if f * (big_x + 1) <= scale:
                _note(n - k)
                return k, f
        raise Undetermined(horizon, k, "reciprocal")


# -- sign-resolving wrappers -------------------------------------------------


def _delegate(inner: DecimalReal, k: int):
    t = inner.floor_scaled(k)
    if inner.is_exact:
        return inner.fraction
    if inner._depth > k:
        return inner._depth, inner._trunc
    return k, t


class _Lazy:
    """Producer that builds its pipeline on first use (signs need digits)."""

    def __init__(self, build):
        self.build = build
        self.inner: DecimalReal | None = None

    def __call__(self, k):
        if self.inner is None:
            self.inner = self.build()
        return _delegate(self.inner, k)


def _algorithmic(producer, label, terminates_by=None) -> DecimalReal:
    return DecimalReal(
        producer=producer,
        backing=Backing.ALGORITHMIC,
        label=label,
        promise="result of left-to-right arithmetic on valid operands",
        terminates_by=terminates_by,
    )


# -- public operations -------------------------------------------------------


def add(x: DecimalReal, y: DecimalReal, fuel: int = DEFAULT_FUEL, *, exact: bool = True) -> DecimalReal:
    """Hua's left-to-right sum.

    With ``exact=False`` the digit scan runs even for exact operands.
    """
    if exact and x.is_exact and y.is_exact:
        return from_fraction(x.fraction + y.fraction)
    return _algorithmic(_Add(x, y, fuel), f"({x.label} + {y.label})", _both_terminate(x, y))


def sub(x: DecimalReal, y: DecimalReal, fuel: int = DEFAULT_FUEL, *, exact: bool = True) -> DecimalReal:
    if exact and x.is_exact and y.is_exact:
        return from_fraction(x.fraction - y.fraction)
    return _algorithmic(_Sub(x, y, fuel), f"({x.label} - {y.label})", _both_terminate(x, y))


def negate(x: DecimalReal, fuel: int = DEFAULT_FUEL, *, exact: bool = True) -> DecimalReal:
    """``0 - x``."""
    return sub(ZERO, x, fuel, exact=exact)


def product_scale(a0x: int, a0y: int) -> int:
    """Smallest s >= 0 with a0x + a0y + 2 <= 10**s (so x + y <= 10**s)."""
    s = 0
    while a0x + a0y + 2 > pow10(s):
        s += 1
    return s


def product_constant(s: int) -> int:
    """Constant M with |(xy)_k - x_k y_k| <= M 10^-k for non-negative x, y
    whose product uses scale parameter s."""
    return 2 * pow10(s) + 2


def product_bound(x: DecimalReal, y: DecimalReal) -> int:
    """The documented M for ``|(xy)_k - x_k y_k| <= M 10^-k``.

    Signs are stripped first: ``|x| <= |a0(x)|`` when a0(x) < 0.
    """
    ax, ay = x.integer_part, y.integer_part
    return product_constant(product_scale(ax if ax >= 0 else -ax, ay if ay >= 0 else -ay))


def mul(
    x: DecimalReal,
    y: DecimalReal,
    fuel: int = DEFAULT_FUEL,
    *,
    scale: int | None = None,
    exact: bool = True,
) -> DecimalReal:
    """Left-to-right product.

    Non-negative operands are multiplied by the digit scan with scale
    parameter ``scale`` (default: the smallest s with a0(x)+a0(y)+2 <= 10**s;
    a caller-supplied value must satisfy x + y <= 10**s).  Negative operands
    go through ``xy = (-x)(-y)`` and ``xy = -(x(-y))``.
    """
    if exact and x.is_exact and y.is_exact:
        return from_fraction(x.fraction * y.fraction)
    tb = None
    if x.terminates_by is not None and y.terminates_by is not None:
        tb = x.terminates_by + y.terminates_by
    elif x.fraction == 0 or y.fraction == 0:
        tb = 0

    def build():
        ax, ay = x.integer_part, y.integer_part
        if ax < 0 and ay < 0:
            return mul(negate(x, fuel, exact=exact), negate(y, fuel, exact=exact), fuel, scale=scale, exact=exact)
        if ax < 0:
            return negate(mul(negate(x, fuel, exact=exact), y, fuel, scale=scale, exact=exact), fuel, exact=exact)
        if ay < 0:
            return negate(mul(x, negate(y, fuel, exact=exact), fuel, scale=scale, exact=exact), fuel, exact=exact)
        s = product_scale(ax, ay) if scale is None else scale
        return _algorithmic(_NonNegProduct(x, y, s, fuel), f"({x.label} * {y.label})", tb)

    return _algorithmic(_Lazy(build), f"({x.label} * {y.label})", tb)


def _require_nonzero(x: DecimalReal, fuel: int):
    sign = sign_with_fuel(x, fuel)
    if not sign.certified_nonzero:
        raise DomainError(f"{x.label or 'value'} is indistinguishable from zero at horizon {fuel}")
    return sign


def reciprocal(x: DecimalReal, fuel: int = DEFAULT_FUEL, *, exact: bool = True) -> DecimalReal:
    """Stevin's digit search for ``1/x``; negative x via ``-((-x)^-1)``."""
    if exact and x.is_exact:
        if x.fraction == 0:
            raise DomainError("reciprocal of zero")
        return from_fraction(1 / x.fraction)
    sign = _require_nonzero(x, fuel)
    if sign.kind is SignKind.NEGATIVE:
        return negate(reciprocal(negate(x, fuel, exact=exact), fuel, exact=exact), fuel, exact=exact)
    return _algorithmic(_Reciprocal(x, fuel), f"1/{x.label}")


def div(x: DecimalReal, y: DecimalReal, fuel: int = DEFAULT_FUEL, *, exact: bool = True) -> DecimalReal:
    """Quotient via the ``x_{2k} / y_k`` scan after reducing to 0 <= x <= 1 <= y.

    When the scan exhausts, ``x * (1/y)`` is tried before giving up.
    """
    if exact and x.is_exact and y.is_exact:
        if y.fraction == 0:
            raise DomainError("division by zero")
        return from_fraction(x.fraction / y.fraction)
    sign_y = _require_nonzero(y, fuel)

    def build():
        flip = False
        xx, yy, sy = x, y, sign_y
        if x.integer_part < 0:
            xx, flip = negate(x, fuel, exact=exact), not flip
        if sy.kind is SignKind.NEGATIVE:
            yy, flip = negate(y, fuel, exact=exact), not flip
            sy = sign_with_fuel(yy, fuel)
            if not sy.certified_nonzero:
                raise DomainError("divisor indistinguishable from zero")
        a = 0
        while xx.integer_part + 1 > pow10(a):
            a += 1
        p = 0 if yy.integer_part >= 1 else sy.depth
        xs, ys = shift(xx, -a), shift(yy, p)
        core = _algorithmic(_ReducedQuotient(xs, ys, fuel), f"({x.label} / {y.label})")
        out = shift(core, a + p)
        return negate(out, fuel, exact=exact) if flip else out

    return _algorithmic(_Lazy(build), f"({x.label} / {y.label})")


# -- inspection helpers ------------------------------------------------------


def _scanner(op: str, x: DecimalReal, y: DecimalReal, scale: int | None, fuel: int) -> _Scan:
    if op == "add":
        return _Add(x, y, fuel)
    if op == "sub":
        return _Sub(x, y, fuel)
    if op == "mul":
        ax, ay = x.integer_part, y.integer_part
        if ax < 0 or ay < 0:
            raise ValueError("theta traces for mul need non-negative operands")
        return _NonNegProduct(x, y, product_scale(ax, ay) if scale is None else scale, fuel)
    raise ValueError(f"unknown operation {op!r}")


def theta_trace(
    op: str, x: DecimalReal, y: DecimalReal, start: int, stop: int, *, scale: int | None = None
) -> list[tuple[int, int]]:
    """``[(n, theta_n)]`` of the trial values for ``n`` in ``start..stop``."""
    sc = _scanner(op, x, y, scale, DEFAULT_FUEL)
    return [(n, sc.theta(n)[0]) for n in range(start, stop + 1)]


def scan_depths(
    op: str, x: DecimalReal, y: DecimalReal, positions: int, fuel: int = DEFAULT_FUEL, *, scale: int | None = None
) -> list[int | None]:
    """For each k in 0..positions-1, how far past k the scan had to look.

    ``None`` marks a position whose scan exhausted the fuel.
    """
    sc = _scanner(op, x, y, scale, fuel)
    out: list[int | None] = []
    for k in range(positions):
        depth = None
        for n in range(k + 1, k + fuel + 1):
            if sc.settles(sc.theta(n)[0]):
                depth = n - k
                break
        out.append(depth)
    return out
