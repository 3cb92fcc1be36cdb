"""Binary supermodular cost oracles.

A cost function ``c`` over chores is binary supermodular when

* ``c(∅) = 0``,
* every marginal ``c(S + o) - c(S)`` is 0 or 1, and
* marginals never decrease as the bundle grows.

Its dual ``r(S) = |S| - c(S)`` is then a matroid rank function whose independent
sets are exactly the zero-cost bundles; the clean-allocation engine works on
that view.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .errors import ContractViolation, DomainError, MalformedTableError


class CostOracle(abc.ABC):
    """Contract for a binary supermodular cost function over ``ground``.

    Subclasses implement :meth:`_cost`; the public methods check arguments.
    Implementations must be pure, so they are safe to query from several threads.
    """

    ground: frozenset[int]

    @property
    def m(self) -> int:
        return len(self.ground)

    @abc.abstractmethod
    def _cost(self, bundle: frozenset[int]) -> int:
        ...

    def cost(self, bundle: Iterable[int]) -> int:
        bundle = frozenset(bundle)
        if not bundle <= self.ground:
            raise DomainError(f"chores {sorted(bundle - self.ground)} are outside the ground set")
        return self._cost(bundle)

    def marginal(self, bundle: Iterable[int], o: int) -> int:
        bundle = frozenset(bundle)
        if o in bundle:
            raise ContractViolation(f"chore {o} is already in the bundle")
        return self.cost(bundle | {o}) - self.cost(bundle)

    def rank(self, bundle: Iterable[int]) -> int:
        bundle = frozenset(bundle)
        return len(bundle) - self.cost(bundle)

    def is_zero_cost_addable(self, bundle: Iterable[int], o: int) -> bool:
        bundle = frozenset(bundle)
        if o in bundle:
            raise ContractViolation(f"chore {o} is already in the bundle")
        if self.cost(bundle) != 0:
            raise ContractViolation("bundle must have zero cost")
        return self.cost(bundle | {o}) == 0


@dataclass(frozen=True)
class ApprovalCapCost(CostOracle):
    """Zero cost for up to ``cap`` approved chores; everything else costs 1 each.

    ``c(S) = max(0, |S ∩ A| - cap) + |S \\ A|``
    """

    ground: frozenset[int]
    approved: frozenset[int]
    cap: int

    def __post_init__(self):
        object.__setattr__(self, "ground", frozenset(self.ground))
        object.__setattr__(self, "approved", frozenset(self.approved))
        if not self.approved <= self.ground:
            raise DomainError("approved chores must belong to the ground set")
        if self.cap < 0:
            raise DomainError(f"cap must be nonnegative, got {self.cap}")

    def _cost(self, bundle):
        inside = len(bundle & self.approved)
        return max(0, inside - self.cap) + len(bundle) - inside


@dataclass(frozen=True)
class PartitionCapCost(CostOracle):
    """Disjoint categories, each with its own free quota; uncategorized chores cost 1.

    ``c(S) = Σ_j max(0, |S ∩ C_j| - k_j) + |S \\ ∪_j C_j|``
    """

    ground: frozenset[int]
    categories: tuple[tuple[frozenset[int], int], ...]

    def __post_init__(self):
        object.__setattr__(self, "ground", frozenset(self.ground))
        cats = tuple((frozenset(c), int(k)) for c, k in self.categories)
        object.__setattr__(self, "categories", cats)
        seen: set[int] = set()
        for chores, cap in cats:
            if cap < 0:
                raise DomainError(f"cap must be nonnegative, got {cap}")
            if not chores <= self.ground:
                raise DomainError("category chores must belong to the ground set")
            if seen & chores:
                raise DomainError("categories must be disjoint")
            seen |= chores
        object.__setattr__(self, "_covered", frozenset(seen))

    def _cost(self, bundle):
        total = len(bundle - self._covered)
        for chores, cap in self.categories:
            total += max(0, len(bundle & chores) - cap)
        return total


@dataclass(frozen=True)
class ExplicitCost(CostOracle):
    """Cost given by a full table over all subsets of a small ground set.

    Meant for testing; run :func:`validate_binary_supermodular` before trusting one.
    """

    ground: frozenset[int]
    table: Mapping[frozenset[int], int]

    def __post_init__(self):
        object.__setattr__(self, "ground", frozenset(self.ground))
        object.__setattr__(self, "table", {frozenset(k): int(v) for k, v in self.table.items()})

    def _cost(self, bundle):
        try:
            return self.table[bundle]
        except KeyError:
            raise MalformedTableError(f"no table entry for {sorted(bundle)}") from None

    @classmethod
    def from_oracle(cls, oracle: CostOracle) -> "ExplicitCost":
        ground = sorted(oracle.ground)
        table = {
            frozenset(s): oracle.cost(s)
            for r in range(len(ground) + 1)
            for s in combinations(ground, r)
        }
        return cls(frozenset(ground), table)


@dataclass(frozen=True)
class Violation:
    """First axiom failure found by :func:`validate_binary_supermodular`.

    ``axiom`` is ``"a"`` (empty set costs 0), ``"b"`` (binary marginals) or
    ``"c"`` (nondecreasing marginals); for ``"c"``, ``superset`` is ``S + extra``.
    """

    axiom: str
    subset: frozenset[int]
    chore: int | None = None
    superset: frozenset[int] | None = None
    message: str = ""

    def __str__(self):
        return self.message


MAX_TABLE_GROUND = 20


def validate_binary_supermodular(oracle: ExplicitCost) -> Violation | None:
    """Exhaustively check the three axioms on an explicit table.

    Returns ``None`` when the table is valid. Nondecreasing marginals are checked
    only against one-element supersets, which implies the general statement.
    """
    ground = sorted(oracle.ground)
    k = len(ground)
    if k > MAX_TABLE_GROUND:
        raise ContractViolation(f"ground set of {k} chores is too large to validate exhaustively")
    # bitmask-indexed copy of the table
    values = [0] * (1 << k)
    for mask in range(1 << k):
        subset = frozenset(ground[b] for b in range(k) if mask >> b & 1)
        if subset not in oracle.table:
            raise MalformedTableError(f"table has no entry for {sorted(subset)}")
        values[mask] = oracle.table[subset]

    def as_set(mask):
        return frozenset(ground[b] for b in range(k) if mask >> b & 1)

    if values[0] != 0:
        return Violation("a", frozenset(), message=f"cost of the empty set is {values[0]}, not 0")
    for mask in range(1 << k):
        for b in range(k):
            if mask >> b & 1:
                continue
            delta = values[mask | 1 << b] - values[mask]
            if delta not in (0, 1):
                return Violation(
                    "b", as_set(mask), ground[b],
                    message=f"marginal of chore {ground[b]} to {sorted(as_set(mask))} is {delta}",
                )
    for mask in range(1 << k):
        for b in range(k):
            if mask >> b & 1:
                continue
            delta = values[mask | 1 << b] - values[mask]
            for e in range(k):
                if e == b or mask >> e & 1:
                    continue
                bigger = mask | 1 << e
                if values[bigger | 1 << b] - values[bigger] < delta:
                    return Violation(
                        "c", as_set(mask), ground[b], as_set(bigger),
                        message=(
                            f"marginal of chore {ground[b]} drops from {delta} on "
                            f"{sorted(as_set(mask))} to {values[bigger | 1 << b] - values[bigger]} "
                            f"on {sorted(as_set(bigger))}"
                        ),
                    )
    return None
