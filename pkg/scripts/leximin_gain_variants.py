"""How often does ranking agents by *current* weighted utility miss the leximin optimum?

Compares the built-in leximin gain (post-chore weighted utility, then weight) with
the current-utility variant on random instances, per weight pool.

    python scripts/leximin_gain_variants.py --instances 1000
"""
import argparse
import random
from fractions import Fraction

from choreswap import WeightedLeximin, run_general_yankee_swap, sorted_weighted_vector
from choreswap.io import FAMILIES, random_instance
from choreswap.verify import brute_force_optimal
from choreswap.yankee import gain_weighted_leximin, gain_weighted_leximin_current

POOLS = {
    "unit": (Fraction(1),),
    "{1,2}": (Fraction(1), Fraction(2)),
    "{1,2,3,1/2}": (Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2)),
}


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--instances", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    print(f"{'weights':<14}{'post-chore gain':>18}{'current gain':>15}")
    for label, pool in POOLS.items():
        rng = random.Random(args.seed)
        misses = {"post": 0, "current": 0}
        for _ in range(args.instances):
            inst = random_instance(rng, rng.choice([2, 3]), rng.randint(2, 6), FAMILIES, pool)
            best = brute_force_optimal(inst, WeightedLeximin()).value
            for key, gain in (("post", gain_weighted_leximin), ("current", gain_weighted_leximin_current)):
                if sorted_weighted_vector(inst, run_general_yankee_swap(inst, gain).allocation) != best:
                    misses[key] += 1
        print(f"{label:<14}{misses['post']:>12}/{args.instances:<5}{misses['current']:>9}/{args.instances}")


if __name__ == "__main__":
    main()
