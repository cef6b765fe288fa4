#!/usr/bin/env python3
"""Exhaustive field-law check over small decimals."""

import argparse

from drcalc.config import SelfCheckConfig
from drcalc.oracle import exhaustive_small_check


def main() -> int:
    base = SelfCheckConfig()
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-scale", type=int, default=base.max_scale)
    p.add_argument("--max-int", type=int, default=base.max_int)
    p.add_argument("--digits", type=int, default=base.digits)
    args = p.parse_args()
    cfg = SelfCheckConfig(args.max_scale, args.max_int, args.digits)
    rep = exhaustive_small_check(cfg.max_scale, cfg.max_int, cfg.digits)
    print(rep.summary())
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
