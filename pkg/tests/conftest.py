import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from naive import Naive  # noqa: E402
from simplegrowth import ElementSet, get_group  # noqa: E402


@pytest.fixture(scope="session")
def alt5():
    return get_group("Alt(5)")


@pytest.fixture(scope="session")
def psl27():
    return get_group("PSL2(7)")


@pytest.fixture(scope="session")
def z12():
    return get_group("Cyclic(12)")


@pytest.fixture(scope="session")
def naive_alt5(alt5):
    return Naive(alt5)


@pytest.fixture(scope="session")
def naive_psl27(psl27):
    return Naive(psl27)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_set(G, rng, lo, hi):
    size = int(rng.integers(lo, hi + 1))
    return ElementSet.from_indices(G, rng.choice(G.order, size=size, replace=False))


def element(G, images):
    return G.index_of(np.array(images))
