import random
from collections import deque

import pytest
from hypothesis import given
from hypothesis import strategies as st

from choreswap import Allocation, ApprovalCapCost, Instance, augment, compute_min_cost_allocation, decompose
from choreswap.clean import check_decomposition, exchange_graph
from choreswap.costs import CostOracle
from choreswap.errors import ContractViolation, OracleContractError
from choreswap.verify import brute_force_max_clean_size

from conftest import O1, O2, O3, small_instance


def all_costly(n, m):
    return Instance((1,) * n, tuple(ApprovalCapCost(range(m), set(), 0) for _ in range(n)))


def test_all_caps_zero_allocates_nothing():
    x = compute_min_cost_allocation(all_costly(2, 4))
    assert x.size() == 0 and x.pool == frozenset(range(4))


def test_d1_clean_allocation(D1):
    x = compute_min_cost_allocation(D1)
    assert brute_force_max_clean_size(D1) == 2
    assert x == Allocation(3, (frozenset({O1}), frozenset({O2})), frozenset({O3}))


def test_single_agent_cap_two():
    inst = Instance((1,), (ApprovalCapCost(range(2), {O1, O2}, 2),))
    assert compute_min_cost_allocation(inst) == Allocation(2, (frozenset({O1, O2}),), frozenset())


def test_augment_direct_add(D1):
    x = augment(D1, Allocation.empty(2, 3), O1)
    assert x.bundles == (frozenset({O1}), frozenset())


def test_augment_no_path(D1):
    x = Allocation.from_bundles(3, [{O1}, {O2}])
    assert augment(D1, x, O3) is None


def test_augment_chain():
    # agent 0 approves {o1, o2} cap 1 and holds o2; agent 1 approves {o2} cap 1
    inst = Instance(
        (1, 1), (ApprovalCapCost(range(2), {O1, O2}, 1), ApprovalCapCost(range(2), {O2}, 1))
    )
    start = Allocation.from_bundles(2, [{O2}, set()])
    g = exchange_graph(inst, start)
    assert g.sinks[O1] == () and g.arcs[O1] == (O2,) and g.sinks[O2] == (1,)
    assert augment(inst, start, O1) == Allocation(2, (frozenset({O1}), frozenset({O2})), frozenset())


def test_augment_contracts(D1):
    x = Allocation.from_bundles(3, [{O1}, set()])
    with pytest.raises(ContractViolation):
        augment(D1, x, O1)
    with pytest.raises(ContractViolation):
        augment(D1, Allocation.from_bundles(3, [{O1, O2}, set()]), O3)  # not clean


class LyingCost(CostOracle):
    """Claims a cost of 2 for any pair: not binary."""

    def __init__(self, m):
        self.ground = frozenset(range(m))

    def _cost(self, bundle):
        return 2 if len(bundle) >= 2 else 0


def test_oracle_contract_error_names_agent():
    inst = Instance((1, 1), (ApprovalCapCost(range(3), set(), 0), LyingCost(3)))
    with pytest.raises(OracleContractError) as err:
        compute_min_cost_allocation(inst)
    assert err.value.agent == 1


def test_decompose_examples(D1):
    clean = compute_min_cost_allocation(D1)
    d = decompose(D1, clean)
    assert d.clean == clean and d.supplementary.size() == 0

    x = Allocation.from_bundles(3, [{O1, O2, O3}, set()])
    d = decompose(D1, x)
    assert d.clean.bundles[0] == {O1} and d.supplementary.bundles[0] == {O2, O3}
    assert D1.cost(0, x.bundles[0]) == 2 == len(d.supplementary.bundles[0])

    inst = all_costly(1, 3)
    d = decompose(inst, Allocation.from_bundles(3, [{0, 2}]))
    assert d.clean.bundles[0] == frozenset() and d.supplementary.bundles[0] == {0, 2}


def _reachable_sink(graph, source):
    """Plain BFS over the materialized exchange graph."""
    seen, queue = {source}, deque([source])
    while queue:
        x = queue.popleft()
        if graph.sinks[x]:
            return True
        for y in graph.arcs[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return False


def _random_clean(inst, rng):
    """A random clean partial allocation built by random direct additions."""
    bundles = [set() for _ in range(inst.n)]
    for o in rng.sample(range(inst.m), inst.m):
        for i in rng.sample(range(inst.n), inst.n):
            if inst.cost(i, bundles[i] | {o}) == 0:
                bundles[i].add(o)
                break
    return Allocation.from_bundles(inst.m, bundles)


@given(st.integers(0, 10**6))
def test_augment_matches_explicit_graph(seed):
    inst = small_instance(seed)
    rng = random.Random(seed)
    x = _random_clean(inst, rng)
    # drop a few chores so that there is something to augment
    bundles = [set(b) for b in x.bundles]
    for b in bundles:
        for o in list(b):
            if rng.random() < 0.4:
                b.discard(o)
    x = Allocation.from_bundles(inst.m, bundles)
    graph = exchange_graph(inst, x)
    for o in sorted(x.pool):
        y = augment(inst, x, o)
        assert (y is not None) == _reachable_sink(graph, o)
        if y is not None:
            assert y.size() == x.size() + 1
            assert y.allocated() == x.allocated() | {o}
            assert all(inst.cost(i, b) == 0 for i, b in enumerate(y.bundles))


@given(st.integers(0, 10**6))
def test_clean_allocation_is_maximum_and_certified(seed):
    inst = small_instance(seed)
    x = compute_min_cost_allocation(inst)
    assert all(inst.cost(i, b) == 0 for i, b in enumerate(x.bundles))
    assert x.size() == brute_force_max_clean_size(inst)
    for o in sorted(x.pool):
        assert augment(inst, x, o) is None
    assert compute_min_cost_allocation(inst) == x


@given(st.integers(0, 10**6))
def test_decomposition_conditions(seed):
    inst = small_instance(seed)
    rng = random.Random(seed)
    bundles = [set() for _ in range(inst.n)]
    for o in range(inst.m):
        a = rng.randrange(inst.n + 1)
        if a:
            bundles[a - 1].add(o)
    x = Allocation.from_bundles(inst.m, bundles)
    d = decompose(inst, x)
    assert check_decomposition(inst, d, x) == []
    assert sum(inst.cost(i, b) for i, b in enumerate(x.bundles)) == d.supplementary.size()
