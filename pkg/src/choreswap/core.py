"""Instances, allocations, utility vectors and lexicographic comparison.

Agents are indexed ``0..n-1`` and chores ``0..m-1``; string labels only matter
for serialization. Utilities are ``-cost`` and therefore never positive.
Weighted quantities are kept as :class:`fractions.Fraction` so that every tie
is decided exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContractViolation, MalformedAllocationError


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, a, b) -> "Ordering":
        if a > b:
            return cls.GREATER
        if a < b:
            return cls.LESS
        return cls.EQUAL


def as_weight(value) -> Fraction:
    """Convert ``value`` (int, Fraction, "3/2" string, or float) to a Fraction."""
    if isinstance(value, float):
        value = Fraction(value).limit_denominator(10**9)
    w = Fraction(value)
    if w <= 0:
        raise ContractViolation(f"weights must be positive, got {w}")
    return w


@dataclass(frozen=True)
class Instance:
    """Agents with positive weights and one cost oracle each over a shared chore set."""

    weights: tuple[Fraction, ...]
    oracles: tuple  # tuple[CostOracle, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(as_weight(w) for w in self.weights))
        object.__setattr__(self, "oracles", tuple(self.oracles))
        if len(self.weights) < 1:
            raise ContractViolation("an instance needs at least one agent")
        if len(self.oracles) != len(self.weights):
            raise ContractViolation(
                f"{len(self.weights)} weights but {len(self.oracles)} cost oracles"
            )
        m = self.oracles[0].m
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"o{k + 1}" for k in range(m)))
        else:
            object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ContractViolation("chore labels must be distinct")
        for i, oracle in enumerate(self.oracles):
            if oracle.ground != frozenset(range(len(self.labels))):
                raise ContractViolation(
                    f"oracle of agent {i} is not defined over the instance's {len(self.labels)} chores"
                )

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def chores(self) -> range:
        return range(self.m)

    def cost(self, i: int, bundle: Iterable[int]) -> int:
        return self.oracles[i].cost(frozenset(bundle))


@dataclass(frozen=True)
class Allocation:
    """An exact (n+1)-partition of the chores: ``pool`` is X_0, ``bundles[i]`` is X_{i+1}.

    Construct with :meth:`from_bundles` when the pool should be inferred.
    """

    m: int
    bundles: tuple[frozenset[int], ...]
    pool: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "bundles", tuple(frozenset(b) for b in self.bundles))
        object.__setattr__(self, "pool", frozenset(self.pool))
        seen: set[int] = set()
        for part in (self.pool, *self.bundles):
            for o in part:
                if not isinstance(o, int) or not 0 <= o < self.m:
                    raise MalformedAllocationError(f"unknown chore {o!r}")
                if o in seen:
                    raise MalformedAllocationError(f"chore {o} appears in two bundles")
                seen.add(o)
        if len(seen) != self.m:
            missing = sorted(set(range(self.m)) - seen)
            raise MalformedAllocationError(f"chores {missing} are in no bundle")

    @classmethod
    def from_bundles(cls, m: int, bundles: Sequence[Iterable[int]]) -> "Allocation":
        bundles = tuple(frozenset(b) for b in bundles)
        assigned = frozenset().union(*bundles) if bundles else frozenset()
        pool = frozenset(o for o in range(m) if o not in assigned)
        return cls(m, bundles, pool)

    @classmethod
    def empty(cls, n: int, m: int) -> "Allocation":
        return cls(m, tuple(frozenset() for _ in range(n)), frozenset(range(m)))

    @property
    def n(self) -> int:
        return len(self.bundles)

    @property
    def complete(self) -> bool:
        return not self.pool

    def allocated(self) -> frozenset[int]:
        return frozenset().union(*self.bundles) if self.bundles else frozenset()

    def size(self) -> int:
        """Number of allocated chores, |X_1 ∪ ... ∪ X_n|."""
        return sum(len(b) for b in self.bundles)

    def holder(self) -> dict[int, int]:
        return {o: i for i, b in enumerate(self.bundles) for o in b}

    def union(self, other: "Allocation") -> "Allocation":
        """Agent-wise union X ∪ Y; the two must not both assign the same chore."""
        if other.m != self.m or other.n != self.n:
            raise ContractViolation("allocations belong to different instances")
        return Allocation.from_bundles(
            self.m, [a | b for a, b in zip(self.bundles, other.bundles)]
        )


def _check_shape(instance: Instance, allocation: Allocation) -> None:
    if allocation.m != instance.m or allocation.n != instance.n:
        raise MalformedAllocationError(
            f"allocation has shape (n={allocation.n}, m={allocation.m}), "
            f"instance has (n={instance.n}, m={instance.m})"
        )


def utility_vector(instance: Instance, allocation: Allocation) -> tuple[int, ...]:
    _check_shape(instance, allocation)
    return tuple(-instance.cost(i, b) for i, b in enumerate(allocation.bundles))


def weighted_utility_vector(instance: Instance, allocation: Allocation) -> tuple[Fraction, ...]:
    return weighted(utility_vector(instance, allocation), instance.weights)


def weighted(u: Sequence[int], weights: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) / w for x, w in zip(u, weights))


def sorted_weighted_vector(instance: Instance, allocation: Allocation) -> tuple[Fraction, ...]:
    return tuple(sorted(weighted_utility_vector(instance, allocation)))


def lex_compare(x: Sequence, y: Sequence) -> Ordering:
    if len(x) != len(y):
        raise ContractViolation(f"cannot compare vectors of length {len(x)} and {len(y)}")
    for a, b in zip(x, y):
        if a != b:
            return Ordering.GREATER if a > b else Ordering.LESS
    return Ordering.EQUAL
