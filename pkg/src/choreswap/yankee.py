"""General Yankee Swap for chores: gain functions, justice criteria and the solver.

The solver first computes a maximum clean allocation, then hands the leftover
chores out one at a time. Each leftover chore costs its receiver exactly one
unit, so the only decision is *who* pays next; that is made by a gain function
``gain(u, weights, i)`` returning a tuple compared lexicographically. The
highest gain wins and ties go to the highest agent index.

Gain functions see only the utility vector and the weights, never the
allocation, and the built-ins only read ``u[i]`` and ``weights[i]``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .clean import Decomposition, check_decomposition, compute_min_cost_allocation
from .core import Allocation, Instance, Ordering, lex_compare, utility_vector, weighted
from .errors import ConfigurationError, ContractViolation, DomainError, InvariantError

GainFunction = Callable[[Sequence[int], Sequence[Fraction], int], tuple]

# float comparisons for non-integer exponents
FLOAT_TOL = 1e-12


def _exact_power(p) -> int | None:
    """Return ``p`` as an int when it is integral, else ``None``."""
    if isinstance(p, (int, Fraction)) and Fraction(p).denominator == 1:
        return int(p)
    if isinstance(p, float) and p.is_integer():
        return int(p)
    return None


def _check_p(p):
    if p is None:
        raise ConfigurationError("p required for the malfare criterion")
    if p < 1:
        raise DomainError(f"p must be at least 1, got {p}")


def close(a, b) -> bool:
    """Equality used for malfare values: exact for rationals, relative 1e-12 for floats."""
    if isinstance(a, float) or isinstance(b, float):
        return abs(a - b) <= FLOAT_TOL * max(1.0, abs(a), abs(b))
    return a == b


def gain_weighted_leximin(u: Sequence[int], weights: Sequence[Fraction], i: int) -> tuple:
    """Weighted utility agent ``i`` would have after one more chore, then its weight.

    Preferring the agent whose post-chore weighted utility stays highest, and among
    those the heavier agent, makes each greedy step a leximin-best one.
    """
    w = weights[i]
    return (Fraction(u[i] - 1) / w, w)


def gain_weighted_leximin_current(u: Sequence[int], weights: Sequence[Fraction], i: int) -> tuple:
    """Variant ranking agents by their *current* weighted utility ``(u_i / w_i, w_i)``.

    Coincides with :func:`gain_weighted_leximin` when all weights are equal, but
    with unequal weights it can pick a leximin-worse agent (n=2, w=(1, 3), two
    chores both agents dislike: it returns costs (1, 1) instead of (0, 2)). Kept
    for comparison and for the verifier's negative tests.
    """
    w = weights[i]
    return (Fraction(u[i]) / w, w)


def gain_p_mean_malfare(u: Sequence[int], weights: Sequence[Fraction], i: int, p) -> tuple:
    """``w_i [c^p - (c + 1)^p]`` with ``c = -u_i``: minus the malfare increase."""
    _check_p(p)
    c = -u[i]
    if c < 0:
        raise ContractViolation(f"utility {u[i]} is positive")
    k = _exact_power(p)
    if k is not None:
        return (weights[i] * (c**k - (c + 1) ** k),)
    return (float(weights[i]) * (c**p - (c + 1) ** p),)


def malfare_gain(p) -> GainFunction:
    _check_p(p)
    k = _exact_power(p)

    if k is not None:
        def gain(u, weights, i):
            c = -u[i]
            return (weights[i] * (c**k - (c + 1) ** k),)
    else:
        def gain(u, weights, i):
            c = -u[i]
            return (float(weights[i]) * (c**p - (c + 1) ** p),)

    gain.__name__ = f"malfare_gain_p{p}"
    return gain


def constant_gain(u, weights, i) -> tuple:
    return (0,)


def random_gain(seed: int) -> GainFunction:
    """An arbitrary but reproducible gain depending on ``(i, u_i)`` only."""
    table: dict[tuple[int, int], tuple] = {}

    def gain(u, weights, i):
        key = (i, u[i])
        if key not in table:
            rng = random.Random(f"{seed}:{i}:{u[i]}")
            table[key] = (Fraction(rng.randrange(-5, 6)), Fraction(rng.randrange(0, 3)))
        return table[key]

    return gain


def select_agent(gains: Sequence[tuple]) -> int:
    """Index of the lexicographically largest gain; ties go to the largest index."""
    best = 0
    for j in range(1, len(gains)):
        if lex_compare(gains[j], gains[best]) >= Ordering.EQUAL:
            best = j
    return best


# -- justice criteria ---------------------------------------------------------


class Criterion:
    """Total preorder over utility vectors of one instance.

    ``value`` is the natural score (sum of utilities, sorted weighted vector,
    malfare); ``compare_vectors`` orders two utility vectors, GREATER meaning
    the first is better.
    """

    name: str

    def value(self, u: Sequence[int], weights: Sequence[Fraction]):
        raise NotImplementedError

    def compare_values(self, a, b) -> Ordering:
        return Ordering.of(a, b)

    def compare_vectors(self, x, y, weights) -> Ordering:
        return self.compare_values(self.value(x, weights), self.value(y, weights))

    def compare(self, instance: Instance, x: Allocation, y: Allocation) -> Ordering:
        return self.compare_vectors(
            utility_vector(instance, x), utility_vector(instance, y), instance.weights
        )

    def gain(self) -> GainFunction:
        raise NotImplementedError


class USW(Criterion):
    name = "usw"

    def value(self, u, weights):
        return sum(u)

    def gain(self):
        return constant_gain

    def __repr__(self):
        return "USW()"


class WeightedLeximin(Criterion):
    name = "leximin"

    def value(self, u, weights):
        return tuple(sorted(weighted(u, weights)))

    def compare_values(self, a, b):
        return lex_compare(a, b)

    def gain(self):
        return gain_weighted_leximin

    def __repr__(self):
        return "WeightedLeximin()"


@dataclass(frozen=True)
class WeightedPMalfare(Criterion):
    """Minimize ``Σ w_i c_i^p``; smaller value compares GREATER."""

    p: float | int | Fraction | None = None
    name: str = field(default="malfare", init=False)

    def value(self, u, weights):
        _check_p(self.p)
        k = _exact_power(self.p)
        if k is not None:
            return sum((w * (-x) ** k for x, w in zip(u, weights)), Fraction(0))
        return math.fsum(float(w) * (-x) ** self.p for x, w in zip(u, weights))

    def compare_values(self, a, b):
        if close(a, b):
            return Ordering.EQUAL
        return Ordering.GREATER if a < b else Ordering.LESS

    def gain(self):
        return malfare_gain(self.p)


def criterion_compare(criterion: Criterion, instance: Instance, x: Allocation, y: Allocation) -> Ordering:
    if not (x.complete and y.complete):
        raise ContractViolation("criteria compare complete allocations")
    return criterion.compare(instance, x, y)


def make_criterion(name: str, p=None) -> Criterion:
    if name == "usw":
        return USW()
    if name == "leximin":
        return WeightedLeximin()
    if name == "malfare":
        _check_p(p)
        return WeightedPMalfare(p)
    raise ConfigurationError(f"unknown criterion {name!r}")


# -- solver -------------------------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    iteration: int
    agent: int
    chore: int
    gain: tuple


@dataclass(frozen=True)
class SwapResult:
    allocation: Allocation
    decomposition: Decomposition
    trace: tuple[TraceStep, ...]

    @property
    def clean_size(self) -> int:
        return self.decomposition.clean.size()


def run_general_yankee_swap(instance: Instance, gain: GainFunction, check: bool = True) -> SwapResult:
    """Complete allocation that is clean-maximal and greedy in ``gain``.

    Leftover chores are handed out in ascending index. Only the receiving agent's
    gain can change between iterations, so one entry is refreshed per step.
    With ``check`` the decomposition conditions are asserted on the result.
    """
    clean = compute_min_cost_allocation(instance)
    n = instance.n
    weights = instance.weights
    extra: list[set[int]] = [set() for _ in range(n)]
    u = [0] * n  # clean bundles cost nothing; each extra chore costs one
    gains = [tuple(gain(u, weights, j)) for j in range(n)]
    dims = {len(g) for g in gains}
    if len(dims) != 1:
        raise ContractViolation(f"gain vectors have mixed dimensions {sorted(dims)}")
    dim = dims.pop()
    trace = []
    for step, o in enumerate(sorted(clean.pool)):
        i = select_agent(gains)
        trace.append(TraceStep(step, i, o, gains[i]))
        extra[i].add(o)
        u[i] -= 1
        gains[i] = tuple(gain(u, weights, i))
        if len(gains[i]) != dim:
            raise ContractViolation(f"gain of agent {i} changed dimension to {len(gains[i])}")
    supplementary = Allocation.from_bundles(instance.m, extra)
    decomposition = Decomposition(clean, supplementary)
    allocation = decomposition.combined()
    if check:
        if not allocation.complete:
            raise InvariantError("solver left chores unallocated")
        problems = check_decomposition(instance, decomposition, allocation)
        if problems:
            raise InvariantError("; ".join(problems))
    return SwapResult(allocation, decomposition, tuple(trace))
