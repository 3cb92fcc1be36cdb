"""Wall-clock time of the full solver on partition-cap instances of growing size.

Caps are drawn from ``0..--max-cap`` over ``--categories`` random categories per
agent, so small caps force long exchange paths and many supplementary chores.

    python scripts/scale_benchmark.py --sizes 10x100 20x200 40x400 --max-cap 3
"""
import argparse
import random
import time

from choreswap import Instance, run_general_yankee_swap
from choreswap.costs import PartitionCapCost
from choreswap.io import ACCEPTANCE_WEIGHTS
from choreswap.yankee import gain_weighted_leximin


def capped_instance(rng, n, m, categories, max_cap):
    ground = frozenset(range(m))
    oracles = []
    for _ in range(n):
        slots = [rng.randrange(categories + 1) for _ in range(m)]  # last slot: uncategorized
        cats = tuple(
            (frozenset(o for o in range(m) if slots[o] == k), rng.randint(0, max_cap)) for k in range(categories)
        )
        oracles.append(PartitionCapCost(ground, cats))
    return Instance(tuple(rng.choice(ACCEPTANCE_WEIGHTS) for _ in range(n)), oracles)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", nargs="+", default=["10x100", "20x200", "40x400"])
    parser.add_argument("--categories", type=int, default=5)
    parser.add_argument("--max-cap", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'n':>4}{'m':>6}{'clean':>8}{'seconds':>10}")
    for size in args.sizes:
        n, m = map(int, size.split("x"))
        inst = capped_instance(random.Random(args.seed), n, m, args.categories, args.max_cap)
        t = time.perf_counter()
        result = run_general_yankee_swap(inst, gain_weighted_leximin)
        print(f"{n:>4}{m:>6}{result.clean_size:>8}{time.perf_counter() - t:>10.3f}")


if __name__ == "__main__":
    main()
