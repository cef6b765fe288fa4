#!/usr/bin/env python3
"""Monte Carlo frequency of the lower carry choice for + and *."""

import argparse
import json
from dataclasses import replace

from drcalc.computable import carry_stats
from drcalc.config import CarryStatsConfig


def main() -> None:
    base = CarryStatsConfig()
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--op", choices=("add", "mul", "both"), default="both")
    p.add_argument("--k", type=int, default=base.k)
    p.add_argument("--trials", type=int, default=base.trials)
    p.add_argument("--seed", type=int, default=base.seed)
    p.add_argument("--json", action="store_true")
    args = p.parse_args()
    ops = ("add", "mul") if args.op == "both" else (args.op,)
    for op in ops:
        cfg = replace(base, op=op, k=args.k, trials=args.trials, seed=args.seed)
        rep = carry_stats(cfg.op, cfg.k, cfg.trials, cfg.seed)
        print(json.dumps(rep.as_dict()) if args.json else rep.summary())


if __name__ == "__main__":
    main()
