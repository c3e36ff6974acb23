import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobwitt.fields import get_field
from frobwitt.witt import (
    WittVector,
    frobenius_F,
    mult_p,
    restriction_R,
    to_integral,
    from_integral,
    universal_polys,
    verschiebung_V,
    witt_add_universal,
    witt_from_int,
    witt_mul_universal,
)


def W(coords, p=3, m=1):
    return WittVector(list(coords), get_field(p, m))


def test_small_sums_over_f3():
    assert (W([1, 0]) + W([1, 0])).coords == (2, 1)
    assert (W([1, 0]) + W([1, 0]) + W([1, 0])).coords == (0, 1)


def test_small_products_over_f3():
    assert (W([1, 1]) * W([0, 1])).coords == (0, 1)
    assert (W([0, 1]) * W([0, 1])).coords == (0, 0)


def test_integral_values():
    assert to_integral(W([0, 1])).value == (3,)
    assert to_integral(W([2, 0])).value == (8,)  # [2] = -1 in Z/9


def test_mult_p_is_vfr():
    assert mult_p(W([2, 1])).coords == (0, 2)


def test_universal_sum_polys_low_degree():
    U = universal_polys(2, 2)
    # S_1 = x1 + y1 + (x0^2 + y0^2 - (x0 + y0)^2)/2 = x1 + y1 - x0 y0
    S1 = U.sum_poly(1)
    assert S1[(0, 1, 0, 0)] == 1 and S1[(0, 0, 0, 1)] == 1
    assert S1[(1, 0, 1, 0)] == -1


@pytest.mark.parametrize("p,m,n", [(2, 1, 3), (3, 1, 2), (2, 2, 2), (3, 2, 2), (5, 1, 2)])
def test_galois_route_matches_universal_polys(p, m, n):
    F = get_field(p, m)
    rng = random.Random(p * 100 + m * 10 + n)
    for _ in range(40):
        a = WittVector([F.random(rng) for _ in range(n)], F)
        b = WittVector([F.random(rng) for _ in range(n)], F)
        assert a + b == witt_add_universal(a, b)
        assert a * b == witt_mul_universal(a, b)


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2)])
def test_integral_roundtrip(p, n):
    for coords in itertools.product(range(p), repeat=n):
        x = W(coords, p)
        assert from_integral(to_integral(x)) == x


def test_witt_from_int():
    F = get_field(3)
    assert witt_from_int(3, F, 2).coords == (0, 1)
    assert witt_from_int(-1, F, 2).coords == (2, 0)


def test_operators_shapes():
    x = W([1, 2, 0])
    assert verschiebung_V(x).n == 4
    assert restriction_R(x).n == 2
    assert frobenius_F(x) == x  # trivial over F_p
    assert W([1], 2, 2).n == 1


def test_json_roundtrip():
    F = get_field(5, 1)
    x = WittVector([1, 4, 2], F)
    assert WittVector.from_json(x.to_json(), F) == x


@st.composite
def witt_triples(draw):
    p, m = draw(st.sampled_from([(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]))
    n = draw(st.integers(1, 4))
    F = get_field(p, m)
    coords = st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n)
    return tuple(WittVector(draw(coords), F) for _ in range(3))


@settings(max_examples=200, deadline=None)
@given(witt_triples())
def test_ring_axioms(xyz):
    x, y, z = xyz
    assert x + y == y + x and x * y == y * x
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert (x - y) + y == x
    assert witt_add_universal(x, y) == x + y and witt_mul_universal(x, y) == x * y
