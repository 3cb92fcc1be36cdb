"""Sweep random small instances and compare the solver with exhaustive search.

    python scripts/solver_vs_bruteforce.py --instances 500 --seed 0
"""
import argparse
import random
import time
from collections import Counter

from choreswap import WeightedLeximin, WeightedPMalfare, run_general_yankee_swap, utility_vector
from choreswap.io import ACCEPTANCE_WEIGHTS, FAMILIES, random_instance
from choreswap.verify import brute_force_optimal
from choreswap.yankee import USW


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--instances", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-m", type=int, default=6)
    args = parser.parse_args()

    criteria = [USW(), WeightedLeximin(), WeightedPMalfare(1), WeightedPMalfare(2), WeightedPMalfare(3),
                WeightedPMalfare(1.5)]
    mismatches, solver_time, brute_time = Counter(), Counter(), Counter()
    rng = random.Random(args.seed)
    for _ in range(args.instances):
        inst = random_instance(rng, rng.choice([2, 3]), rng.randint(3, args.max_m), FAMILIES, ACCEPTANCE_WEIGHTS)
        for c in criteria:
            key = f"{c.name}" + (f"(p={c.p})" if isinstance(c, WeightedPMalfare) else "")
            t = time.perf_counter()
            r = run_general_yankee_swap(inst, c.gain())
            solver_time[key] += time.perf_counter() - t
            t = time.perf_counter()
            best = brute_force_optimal(inst, c)
            brute_time[key] += time.perf_counter() - t
            ours = c.value(utility_vector(inst, r.allocation), inst.weights)
            if c.compare_values(ours, best.value) != 0:
                mismatches[key] += 1

    print(f"{'criterion':<16}{'mismatches':>12}{'solver s':>10}{'brute s':>10}")
    for key in solver_time:
        print(f"{key:<16}{mismatches[key]:>12}{solver_time[key]:>10.2f}{brute_time[key]:>10.2f}")


if __name__ == "__main__":
    main()
