"""Maximum zero-cost partial allocations and clean/supplementary decomposition.

Zero-cost bundles of each agent are the independent sets of the matroid with
rank ``|S| - c_i(S)``, so a largest clean allocation is a largest partitionable
set in the union of those matroids. It is grown one chore at a time along
shortest paths in the exchange graph:

* ``o -> o'`` when ``o'`` sits in agent j's bundle, ``o`` does not, and
  ``X_j - o' + o`` still costs j nothing;
* ``o -> sink_j`` when ``X_j + o`` costs j nothing.

Shifting every chore one step along a shortest path keeps all bundles clean.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import Allocation, Instance, _check_shape
from .errors import ContractViolation, InvariantError, OracleContractError


@dataclass(frozen=True)
class Decomposition:
    """Clean part X⁰ (zero cost per agent) and supplementary part X¹ of an allocation."""

    clean: Allocation
    supplementary: Allocation

    def combined(self) -> Allocation:
        return self.clean.union(self.supplementary)


@dataclass(frozen=True)
class ExchangeGraph:
    """Explicit exchange graph for a clean allocation (used for inspection and tests).

    ``arcs[o]`` lists chores reachable from ``o`` in one swap; ``sinks[o]`` lists agents
    that can take ``o`` outright.
    """

    arcs: dict[int, tuple[int, ...]]
    sinks: dict[int, tuple[int, ...]]


class _CleanState:
    """Mutable working copy of a clean allocation used inside the augmentation loop."""

    def __init__(self, instance: Instance, allocation: Allocation):
        self.instance = instance
        self.bundles = [set(b) for b in allocation.bundles]
        self.holder = allocation.holder()

    def _probe(self, j: int, bundle: frozenset[int]) -> bool:
        c = self.instance.oracles[j].cost(bundle)
        if c not in (0, 1):
            raise OracleContractError(
                f"agent {j}: a one-chore change to a zero-cost bundle produced cost {c}", agent=j
            )
        return c == 0

    def can_take(self, j: int, o: int) -> bool:
        return self._probe(j, frozenset(self.bundles[j]) | {o})

    def can_swap(self, j: int, out: int, o: int) -> bool:
        return self._probe(j, (frozenset(self.bundles[j]) - {out}) | {o})

    def shortest_path(self, source: int):
        """BFS from ``source``; returns ``(chores, agent)`` or ``None``.

        Sinks are tried in ascending agent order as each node is expanded, then
        unvisited chores in ascending index, so the path is a shortest one and ties
        go to the lowest index.
        """
        n = self.instance.n
        parent = {source: None}
        queue = deque([source])
        held = sorted(self.holder)
        while queue:
            x = queue.popleft()
            owner = self.holder.get(x)
            for j in range(n):
                if j != owner and self.can_take(j, x):
                    path = [x]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1], j
            for y in held:
                if y in parent:
                    continue
                j = self.holder[y]
                if j != owner and self.can_swap(j, y, x):
                    parent[y] = x
                    queue.append(y)
        return None

    def apply(self, path: list[int], sink: int) -> None:
        targets = [self.holder[y] for y in path[1:]] + [sink]
        touched = set(targets)
        for x, j in zip(path, targets):
            old = self.holder.get(x)
            if old is not None:
                self.bundles[old].discard(x)
                touched.add(old)
        for x, j in zip(path, targets):
            self.bundles[j].add(x)
            self.holder[x] = j
        for j in touched:
            if self.instance.oracles[j].cost(frozenset(self.bundles[j])) != 0:
                raise InvariantError(f"augmenting path left agent {j} with a costly bundle")

    def freeze(self) -> Allocation:
        return Allocation.from_bundles(self.instance.m, self.bundles)


def _require_clean(instance: Instance, allocation: Allocation) -> None:
    _check_shape(instance, allocation)
    for i, b in enumerate(allocation.bundles):
        if instance.cost(i, b) != 0:
            raise ContractViolation(f"bundle of agent {i} is not zero-cost")


def augment(instance: Instance, allocation: Allocation, o: int) -> Allocation | None:
    """Try to add unallocated chore ``o`` to a clean allocation.

    Returns the new clean allocation (one more chore allocated) or ``None`` when
    no augmenting path exists.
    """
    _require_clean(instance, allocation)
    if o not in allocation.pool:
        raise ContractViolation(f"chore {o} is not unallocated")
    state = _CleanState(instance, allocation)
    found = state.shortest_path(o)
    if found is None:
        return None
    state.apply(*found)
    return state.freeze()


def exchange_graph(instance: Instance, allocation: Allocation) -> ExchangeGraph:
    """Materialize every arc of the exchange graph of a clean allocation."""
    _require_clean(instance, allocation)
    state = _CleanState(instance, allocation)
    arcs, sinks = {}, {}
    for x in instance.chores:
        owner = state.holder.get(x)
        sinks[x] = tuple(j for j in range(instance.n) if j != owner and state.can_take(j, x))
        arcs[x] = tuple(
            y for y in sorted(state.holder)
            if y != x and state.holder[y] != owner and state.can_swap(state.holder[y], y, x)
        )
    return ExchangeGraph(arcs, sinks)


def compute_min_cost_allocation(instance: Instance) -> Allocation:
    """Largest partial allocation in which every agent's bundle costs zero.

    Chores are attempted once each, in ascending index order.
    """
    state = _CleanState(instance, Allocation.empty(instance.n, instance.m))
    for o in instance.chores:
        found = state.shortest_path(o)
        if found is not None:
            state.apply(*found)
    return state.freeze()


def decompose(instance: Instance, allocation: Allocation) -> Decomposition:
    """Split each bundle into a maximal zero-cost part and the rest.

    The zero-cost part is built greedily in chore-index order; because zero-cost
    sets are matroid-independent, greedy maximal is also maximum, and the cost of
    the whole bundle equals the number of leftover chores.
    """
    _check_shape(instance, allocation)
    clean, extra = [], []
    for i, bundle in enumerate(allocation.bundles):
        oracle = instance.oracles[i]
        keep: frozenset[int] = frozenset()
        for o in sorted(bundle):
            if oracle.cost(keep | {o}) == 0:
                keep = keep | {o}
        clean.append(keep)
        extra.append(bundle - keep)
    return Decomposition(
        Allocation.from_bundles(instance.m, clean),
        Allocation.from_bundles(instance.m, extra),
    )


def check_decomposition(
    instance: Instance, decomposition: Decomposition, allocation: Allocation | None = None
) -> list[str]:
    """List every violated decomposition condition (empty list when valid).

    Checks union, disjointness, zero-cost clean part and ``c_i(X_i) = |X¹_i|``;
    the union condition only when ``allocation`` is given.
    """
    problems = []
    clean, extra = decomposition.clean, decomposition.supplementary
    for i in range(instance.n):
        a, b = clean.bundles[i], extra.bundles[i]
        if allocation is not None and a | b != allocation.bundles[i]:
            problems.append(f"agent {i}: clean ∪ supplementary differs from the bundle")
        if a & b:
            problems.append(f"agent {i}: clean and supplementary parts overlap on {sorted(a & b)}")
        if instance.cost(i, a) != 0:
            problems.append(f"agent {i}: clean part has cost {instance.cost(i, a)}")
        total = instance.cost(i, a | b)
        if total != len(b):
            problems.append(f"agent {i}: cost {total} but {len(b)} supplementary chores")
    return problems
