"""Brute-force ground truth and executable sufficient-condition checks.

Everything here is deliberately naive: exhaustive enumeration over allocations
and over small grids of utility vectors. It shares no code path with the solver
beyond the cost oracles and the criterion comparators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .core import Allocation, Instance, Ordering, lex_compare
from .errors import BudgetExceeded
from .yankee import Criterion, GainFunction


@dataclass(frozen=True)
class EnumerationBudget:
    max_allocations: int = 2_000_000
    max_subsets: int = 1 << 20

    def require(self, count: int) -> None:
        if count > self.max_allocations:
            raise BudgetExceeded(count, self.max_allocations)


DEFAULT_BUDGET = EnumerationBudget()


@dataclass(frozen=True)
class BruteForceResult:
    value: object
    allocation: Allocation
    visited: int


def _bundle_costs(instance: Instance):
    cache: dict[tuple[int, frozenset[int]], int] = {}

    def cost(i, bundle):
        key = (i, bundle)
        if key not in cache:
            cache[key] = instance.oracles[i].cost(bundle)
        return cache[key]

    return cost


def brute_force_optimal(
    instance: Instance, criterion: Criterion, budget: EnumerationBudget = DEFAULT_BUDGET
) -> BruteForceResult:
    """Best complete allocation by exhaustive search over all n^m assignments.

    The witness is the first maximal allocation in enumeration order
    (``itertools.product`` over agents per chore).
    """
    n, m = instance.n, instance.m
    budget.require(n**m)
    cost = _bundle_costs(instance)
    best_value, best_assignment, visited = None, None, 0
    for assignment in itertools.product(range(n), repeat=m):
        visited += 1
        bundles = [[] for _ in range(n)]
        for o, i in enumerate(assignment):
            bundles[i].append(o)
        u = [-cost(i, frozenset(b)) for i, b in enumerate(bundles)]
        value = criterion.value(u, instance.weights)
        if best_value is None or criterion.compare_values(value, best_value) == Ordering.GREATER:
            best_value, best_assignment = value, assignment
    bundles = [[o for o, i in enumerate(best_assignment) if i == a] for a in range(n)]
    return BruteForceResult(best_value, Allocation.from_bundles(m, bundles), visited)


def brute_force_max_clean_size(instance: Instance, budget: EnumerationBudget = DEFAULT_BUDGET) -> int:
    """Largest number of chores placeable with every bundle at zero cost.

    Enumerates all (n+1)^m partial assignments (0 = unallocated).
    """
    n, m = instance.n, instance.m
    budget.require((n + 1) ** m)
    cost = _bundle_costs(instance)
    best = 0
    for assignment in itertools.product(range(n + 1), repeat=m):
        size = sum(1 for a in assignment if a)
        if size <= best:
            continue
        bundles = [[] for _ in range(n)]
        for o, a in enumerate(assignment):
            if a:
                bundles[a - 1].append(o)
        if all(cost(i, frozenset(b)) == 0 for i, b in enumerate(bundles)):
            best = size
    return best


# -- sufficient conditions ----------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    """Replayable record of a failed condition check."""

    condition: str
    weights: tuple[Fraction, ...]
    x: tuple[int, ...]
    y: tuple[int, ...] | None = None
    i: int | None = None
    j: int | None = None
    gains: tuple | None = None
    got: Ordering | None = None
    message: str = ""

    def __str__(self):
        return f"{self.condition}: {self.message}"


def _gain_order(a: tuple, b: tuple) -> Ordering:
    if len(a) != len(b):
        return lex_compare(a, b)  # raises
    return Ordering.of(a, b)  # tuples already compare lexicographically


def _dominates(x, y) -> bool:
    return all(a >= b for a, b in zip(x, y))


def _memo_compare(criterion: Criterion):
    """Criterion comparison with values cached per weight profile.

    Grids iterate weight profiles in the outer loop, so the cache is keyed by the
    utility vector alone and dropped whenever the weights change.
    """
    cache: dict = {}
    current = [None]

    def value(x, weights):
        if weights is not current[0] and weights != current[0]:
            cache.clear()
            current[0] = weights
        if x not in cache:
            cache[x] = criterion.value(x, weights)
        return cache[x]

    def compare(x, y, weights):
        return criterion.compare_values(value(x, weights), value(y, weights))

    return compare


def check_C1(criterion: Criterion, pairs: Iterable[tuple[Sequence[int], Sequence[int], Sequence[Fraction]]]):
    """Pareto dominance must imply Ψ-dominance, with EQUAL exactly when x = y.

    ``pairs`` yields ``(x, y, weights)``; pairs where neither vector dominates are
    skipped. Returns the first :class:`Counterexample` or ``None``.
    """
    compare = _memo_compare(criterion)
    for x, y, weights in pairs:
        x, y, weights = tuple(x), tuple(y), tuple(weights)
        if not _dominates(x, y):
            if not _dominates(y, x):
                continue
            x, y = y, x
        got = compare(x, y, weights)
        want = Ordering.EQUAL if x == y else Ordering.GREATER
        if got != want:
            return Counterexample(
                "C1", weights, x, y, got=got,
                message=f"{x} dominates {y} but {criterion!r} says {got.name}",
            )
    return None


def _minus_one(x, k):
    return tuple(v - 1 if h == k else v for h, v in enumerate(x))


def check_G1(
    gain: GainFunction,
    criterion: Criterion,
    triples: Iterable[tuple[Sequence[int], Sequence[Fraction], int, int]],
):
    """Charging the higher-gain agent must give the Ψ-better vector.

    ``triples`` yields ``(x, weights, i, j)``. With y = x minus one at i and
    z = x minus one at j: gain(x, i) > gain(x, j) requires y ≻ z, and equal gains
    require y =Ψ z.
    """
    compare = _memo_compare(criterion)
    for x, weights, i, j in triples:
        x, weights = tuple(x), tuple(weights)
        gi, gj = tuple(gain(x, weights, i)), tuple(gain(x, weights, j))
        by_gain = _gain_order(gi, gj)
        if by_gain == Ordering.LESS:
            i, j, gi, gj, by_gain = j, i, gj, gi, Ordering.GREATER
        y, z = _minus_one(x, i), _minus_one(x, j)
        got = compare(y, z, weights)
        if got != by_gain:
            return Counterexample(
                "G1", weights, x, i=i, j=j, gains=(gi, gj), got=got,
                message=(
                    f"x={x}, w={[str(w) for w in weights]}: gain({i})={gi} vs gain({j})={gj} "
                    f"but charging {i} compares {got.name} to charging {j}"
                ),
            )
    return None


def check_G2(gain: GainFunction, triples: Iterable[tuple[Sequence[int], Sequence[int], Sequence[Fraction], int]]):
    """Gain must be monotone in the agent's own utility, equal when that utility is.

    ``triples`` yields ``(x, y, weights, i)``; pairs with ``x_i < y_i`` are swapped.
    """
    for x, y, weights, i in triples:
        x, y, weights = tuple(x), tuple(y), tuple(weights)
        if x[i] < y[i]:
            x, y = y, x
        gx, gy = tuple(gain(x, weights, i)), tuple(gain(y, weights, i))
        got = _gain_order(gx, gy)
        bad = got == Ordering.LESS or (x[i] == y[i] and got != Ordering.EQUAL)
        if bad:
            return Counterexample(
                "G2", weights, x, y, i=i, gains=(gx, gy), got=got,
                message=f"x_i={x[i]} >= y_i={y[i]} but gain {gx} vs {gy}",
            )
    return None


# -- exhaustive grids ---------------------------------------------------------

GRID_WEIGHTS = (Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2))


def utility_grid(n: int, floor: int = -4) -> list[tuple[int, ...]]:
    return list(itertools.product(range(0, floor - 1, -1), repeat=n))


def weight_grid(n: int, values: Sequence[Fraction] = GRID_WEIGHTS) -> list[tuple[Fraction, ...]]:
    return list(itertools.product(values, repeat=n))


def c1_pairs(max_n: int = 3, floor: int = -4, values=GRID_WEIGHTS) -> Iterator:
    """Each grid vector against itself and against every one-unit decrement of it.

    Pareto dominance is the transitive closure of these covering pairs, so a
    transitive criterion that is strict on every covering pair satisfies the
    dominance condition on the whole grid.
    """
    for n in range(1, max_n + 1):
        for w in weight_grid(n, values):
            for x in utility_grid(n, floor):
                yield x, x, w
                for h in range(n):
                    if x[h] > floor:
                        yield x, _minus_one(x, h), w


def g1_triples(max_n: int = 3, floor: int = -4, values=GRID_WEIGHTS) -> Iterator:
    """All agent pairs i < j on the grid; the trivial i == j case only below max_n."""
    for n in range(1, max_n + 1):
        for w in weight_grid(n, values):
            for x in utility_grid(n, floor):
                for i in range(n):
                    for j in range(i if n < max_n or n == 1 else i + 1, n):
                        yield x, w, i, j


def g2_triples(max_n: int = 3, floor: int = -4, values=GRID_WEIGHTS) -> Iterator:
    """Pairs agreeing at coordinate i or one unit apart there (monotonicity along
    unit steps implies it everywhere). The other coordinates of y are a rotation
    of x's, so a gain that peeks at them would be caught."""
    for n in range(1, max_n + 1):
        for w in weight_grid(n, values):
            for x in utility_grid(n, floor):
                for i in range(n):
                    for v in (x[i], x[i] - 1):
                        if v < floor:
                            continue
                        y = tuple(v if h == i else x[(h + 1) % n] for h in range(n))
                        yield x, y, w, i
