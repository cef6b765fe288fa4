#!/usr/bin/env python3
"""Empirical slack of the truncation bounds for sums and products.

For random digit strings x, y and each k <= max_k it records
|(x+y)_k - x_k - y_k| (bounded by 4 units of 10^-k) and the product gap
|(xy)_k - x_k y_k| against the scale-dependent constant.
"""

import argparse
import random
from collections import Counter
from dataclasses import replace
from fractions import Fraction

from drcalc.arithmetic import add, product_bound, mul
from drcalc.config import TruncationBoundsConfig
from drcalc.decimal_stream import from_digits


def random_real(rng: random.Random, int_range: int):
    a0 = rng.randint(-int_range, int_range)
    seed = rng.randrange(2**32)
    cache: dict[int, int] = {}

    def digit(j: int) -> int:
        if j not in cache:
            cache[j] = random.Random(seed * 1_000_003 + j).randrange(10)
        return cache[j]

    return from_digits(a0, digit)


def main() -> None:
    base = TruncationBoundsConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--pairs", type=int, default=base.pairs)
    p.add_argument("--max-k", type=int, default=base.max_k)
    p.add_argument("--seed", type=int, default=base.seed)
    args = p.parse_args()
    cfg = replace(base, pairs=args.pairs, max_k=args.max_k, seed=args.seed)

    rng = random.Random(cfg.seed)
    sum_gaps: Counter[int] = Counter()
    worst_ratio = Fraction(0)
    for _ in range(cfg.pairs):
        x, y = random_real(rng, cfg.int_range), random_real(rng, cfg.int_range)
        s, prod = add(x, y, cfg.fuel), mul(x, y, cfg.fuel)
        m = product_bound(x, y)
        for k in range(cfg.max_k + 1):
            xk, yk = x.floor_scaled(k), y.floor_scaled(k)
            sum_gaps[abs(s.floor_scaled(k) - xk - yk)] += 1
            gap = Fraction(abs(prod.floor_scaled(k) * 10**k - xk * yk), 10**k)
            worst_ratio = max(worst_ratio, gap / m)
    total = sum(sum_gaps.values())
    print(f"{cfg.pairs} pairs, k = 0..{cfg.max_k}")
    for g in sorted(sum_gaps):
        print(f"  sum gap {g}: {sum_gaps[g] / total:.4f}")
    print(f"  worst product gap / bound: {float(worst_ratio):.4f}")


if __name__ == "__main__":
    main()
