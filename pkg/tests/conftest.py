import random
from fractions import Fraction

import pytest
from hypothesis import settings

from choreswap import ApprovalCapCost, Instance
from choreswap.io import ACCEPTANCE_WEIGHTS, FAMILIES, random_instance

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

O1, O2, O3 = 0, 1, 2


def d1(weights=(1, 1)):
    """Two agents over {o1, o2, o3}: agent 0 likes {o1, o2}, agent 1 likes {o2, o3}, one free chore each."""
    ground = range(3)
    return Instance(
        weights,
        (ApprovalCapCost(ground, {O1, O2}, 1), ApprovalCapCost(ground, {O2, O3}, 1)),
    )


@pytest.fixture
def D1():
    return d1()


@pytest.fixture
def D1w():
    return d1((1, 2))


def small_instance(seed: int, families=FAMILIES, weights=ACCEPTANCE_WEIGHTS):
    rng = random.Random(seed)
    return random_instance(rng, rng.choice([2, 3]), rng.randint(3, 6), families, weights)


def frac(*xs):
    return tuple(Fraction(x) for x in xs)
