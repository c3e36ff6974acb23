import random

import pytest

from frobwitt import diagonal as dg
from frobwitt.fields import get_field
from frobwitt.galois import get_ring


@pytest.mark.parametrize("p,m,n", [(2, 1, 3), (3, 2, 2), (5, 1, 2), (2, 2, 3)])
def test_diagonal_form_reconstructs(p, m, n):
    R = get_ring(get_field(p, m), n)
    rng = random.Random(7)
    for _ in range(20):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        A = [[R.random(rng) if rng.random() < 0.7 else R.scale(R.random(rng), p) for _ in range(c)]
             for _ in range(r)]
        form = dg.diagonal_form(R, A)
        assert dg.matmul(R, dg.matmul(R, form.U, A), form.V) == form.diagonal(R)
        assert form.exps == sorted(form.exps)
        # U and V are invertible
        assert dg.matmul(R, form.U, dg.inverse(R, form.U)) == dg.identity(R, r)
        assert dg.matmul(R, form.V, dg.inverse(R, form.V)) == dg.identity(R, c)


def test_known_exponents():
    R = get_ring(get_field(3), 3)
    A = [[R.from_int(9), R.from_int(3)], [R.from_int(3), R.from_int(0)]]
    form = dg.diagonal_form(R, A)
    assert form.exps == [1, 1]


def test_zero_matrix():
    R = get_ring(get_field(2), 2)
    form = dg.diagonal_form(R, dg.zeros(R, 2, 3))
    assert form.exps == [2, 2]


def test_inverse_singular_raises():
    R = get_ring(get_field(2), 2)
    with pytest.raises(ArithmeticError):
        dg.inverse(R, [[R.from_int(2)]])
