#!/usr/bin/env python3
"""Digits of pi + e with the scan depth needed at each position.

A position whose addition scan runs long is reported as such; whether the
sum terminates is not something a finite scan can decide.
"""

import argparse

from drcalc.arithmetic import add
from drcalc.arclength import pi_real
from drcalc.computable import e_real, pi_plus_e_depths
from drcalc.config import EvalConfig


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--digits", type=int, default=40)
    p.add_argument("--fuel", type=int, default=None)
    args = p.parse_args()
    cfg = EvalConfig(digits=args.digits, fuel=args.fuel)
    fuel = cfg.effective_fuel
    total = add(pi_real(), e_real(), fuel)
    print(f"pi + e = {total.render(cfg.digits)}")
    depths = pi_plus_e_depths(cfg.digits, fuel)
    for k, d in enumerate(depths, start=1):
        mark = "  <- long scan" if d is not None and d > 2 else ""
        print(f"k={k:3d} digit={total.digit(k)} depth={d}{mark}")
    known = [d for d in depths if d is not None]
    print(f"max depth {max(known, default=0)}; mean {sum(known) / max(len(known), 1):.2f}")


if __name__ == "__main__":
    main()
