import pytest
from hypothesis import settings

from latticegm.combinat import Graph, Poset, order_ideals
from latticegm.combinat.masks import from_digits

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def sets(*labels):
    """Digit shorthand: sets("", "13") -> [0, {1,3}] as masks."""
    return [from_digits(s) for s in labels]


@pytest.fixture
def fence_poset():
    return Poset.from_labels(4, [(2, 1), (2, 3), (4, 3)])


@pytest.fixture
def fence_lattice(fence_poset):
    return order_ideals(fence_poset)


@pytest.fixture
def four_cycle():
    return Graph.from_labels(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


@pytest.fixture
def chain3():
    return Poset.from_labels(3, [(3, 2), (2, 1)])
