import random

import pytest

from frobwitt.fields import get_field
from frobwitt.galois import get_ring


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def f3():
    return get_field(3, 1)


@pytest.fixture
def f5():
    return get_field(5, 1)


@pytest.fixture
def f4():
    return get_field(2, 2)


@pytest.fixture
def f9():
    return get_field(3, 2)


@pytest.fixture
def w2_z3():
    # W_2(F_3) = Z/9
    return get_ring(get_field(3, 1), 2)
