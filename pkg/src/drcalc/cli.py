"""Command line front end: ``drcalc eval | pi | stats | selfcheck``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .arclength import PrecisionUnreachable, pi_real
from .arithmetic import metered
from .computable import carry_stats
from .constructions import ConstructionError, MalformedPairing
from .decimal_stream import DecimalReal, DomainError, Undetermined, format_dump
from .exact_scaled import ScaledDecimal
from .expr import ParseError, parse_expr, to_real

__all__ = ["main", "EvalResult", "evaluate", "EXIT_OK", "EXIT_UNDETERMINED", "EXIT_PARSE", "EXIT_DOMAIN"]

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_UNDETERMINED = 2
EXIT_PARSE = 3
EXIT_DOMAIN = 4

DEFAULT_DIGITS = 30

EXACT = "exact-terminating"
STREAMED = "streamed"
UNDETERMINED = "undetermined"


def default_fuel(digits: int) -> int:
    return max(10 * digits, 1000)


@dataclass
class EvalResult:
    input: str
    value: str
    digits: int
    status: str
    fuel_used: int
    checked: str | None = None
    horizon: int | None = None
    real: DecimalReal | None = None

    @property
    def exit_code(self) -> int:
        if self.status == UNDETERMINED:
            return EXIT_UNDETERMINED
        if self.checked is not None and self.checked.startswith("mismatch"):
            return EXIT_FAILED_CHECK
        return EXIT_OK

    def as_json(self) -> dict:
        out = {
            "input": self.input,
            "value": self.value,
            "digits": self.digits,
            "status": self.status,
            "fuel_used": self.fuel_used,
            "checked": self.checked,
        }
        if self.horizon is not None:
            out["horizon"] = self.horizon
        return out


def _determined_prefix(x: DecimalReal, k: int, exc: Exception):
    """Deepest position <= k whose truncation is certified (None if not even
    the integer part is), plus the exhaustion met just past it."""
    best = None
    for j in range(k + 1):
        try:
            best = (j, x.floor_scaled(j))
        except (Undetermined, PrecisionUnreachable) as e:
            return best, e
    return best, exc


def _check(x: DecimalReal, expr, k: int) -> str:
    from .oracle import Certified, Inconclusive, OracleUnsupported, certify_digits

    try:
        verdict = certify_digits(x, k, expr)
    except OracleUnsupported as exc:
        return f"unsupported: {exc}"
    if isinstance(verdict, Certified):
        return "certified"
    if isinstance(verdict, Inconclusive):
        return f"inconclusive: {verdict.reason}"
    return f"mismatch at position {verdict.position}"


def evaluate(text: str, digits: int | None = None, fuel: int | None = None, check: bool = False) -> EvalResult:
    """Parse and evaluate ``text``.

    Raises ParseError on bad syntax and DomainError for division by a value
    that cannot be told apart from zero.
    """
    expr = parse_expr(text)
    k = DEFAULT_DIGITS if digits is None else digits
    fuel = default_fuel(k) if fuel is None else fuel
    with metered() as meter:
        try:
            x = to_real(expr, fuel)
        except Undetermined as exc:  # e.g. a divisor whose sign never settles
            return EvalResult(text, f"…undetermined at horizon {exc.horizon}", k, UNDETERMINED,
                              meter.max_depth, horizon=exc.horizon)
        try:
            x.floor_scaled(k)
        except (Undetermined, PrecisionUnreachable) as exc:
            prefix, stop = _determined_prefix(x, k, exc)
            horizon = getattr(stop, "horizon", fuel)
            shown = "" if prefix is None else str(ScaledDecimal(*prefix))
            return EvalResult(text, f"{shown}…undetermined at horizon {horizon}", k, UNDETERMINED,
                              meter.max_depth, horizon=horizon, real=x)
    q = x.fraction
    terminating = q is not None and x.terminates_by is not None
    if terminating and digits is None:
        exact = ScaledDecimal.from_fraction(q)
        value, k = str(exact), exact.scale
    else:
        value = x.render(k)
    result = EvalResult(text, value, k, EXACT if terminating else STREAMED, meter.max_depth, real=x)
    if check:
        result.checked = _check(x, expr, k)
    return result


# -- subcommands ---------------------------------------------------------------------


def _cmd_eval(args) -> int:
    try:
        res = evaluate(args.expr, args.digits, args.fuel, args.check)
    except ParseError as exc:
        print(f"drcalc: {exc}", file=sys.stderr)
        print(f"  {args.expr}\n  {' ' * len(args.expr.encode()[:exc.offset].decode(errors='ignore'))}^", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, ValueError, ConstructionError, MalformedPairing) as exc:
        print(f"drcalc: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.json:
        print(json.dumps(res.as_json(), ensure_ascii=False))
    else:
        print(res.value)
        line = f"status: {res.status}"
        if res.checked is not None:
            line += f"; check: {res.checked}"
        print(line, file=sys.stderr)
    if args.dump and res.status != UNDETERMINED:
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.write(format_dump(res.real, res.digits))
    return res.exit_code


def _cmd_pi(args) -> int:
    print(pi_real().render(args.digits))
    return EXIT_OK


def _cmd_stats(args) -> int:
    rep = carry_stats(args.op, args.k, args.trials, args.seed)
    print(json.dumps(rep.as_dict()) if args.json else rep.summary())
    return EXIT_OK


def _cmd_selfcheck(args) -> int:
    from .oracle import exhaustive_small_check

    rep = exhaustive_small_check(args.max_scale, args.max_int)
    print(rep.summary())
    return EXIT_OK if rep.ok else EXIT_FAILED_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="drcalc", description="Left-to-right decimal real calculator.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate an expression to K digits")
    e.add_argument("expr")
    e.add_argument("--digits", type=int, default=None, metavar="K",
                   help=f"places after the point (default {DEFAULT_DIGITS}; exact terminating results "
                        "print in full when omitted)")
    e.add_argument("--fuel", type=int, default=None, metavar="F", help="scan horizon (default max(10K, 1000))")
    e.add_argument("--json", action="store_true", help="print a JSON record")
    e.add_argument("--check", action="store_true", help="certify the digits against the interval oracle")
    e.add_argument("--dump", metavar="FILE", help="write the digits in D10 dump format")
    e.set_defaults(func=_cmd_eval)

    pi = sub.add_parser("pi", help="digits of pi from the semicircle length")
    pi.add_argument("--digits", type=int, default=DEFAULT_DIGITS, metavar="K")
    pi.set_defaults(func=_cmd_pi)

    st = sub.add_parser("stats", help="Monte Carlo carry statistics")
    st.add_argument("--op", choices=("add", "mul"), required=True)
    st.add_argument("--k", type=int, default=6)
    st.add_argument("--trials", type=int, default=100_000)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--json", action="store_true")
    st.set_defaults(func=_cmd_stats)

    sc = sub.add_parser("selfcheck", help="exhaustive field-law check on small decimals")
    sc.add_argument("--max-scale", type=int, default=2)
    sc.add_argument("--max-int", type=int, default=1)
    sc.set_defaults(func=_cmd_selfcheck)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("digits", "fuel", "trials"):
        v = getattr(args, name, None)
        if v is not None and v < (1 if name != "digits" else 0):
            build_parser().error(f"--{name} must be positive")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
