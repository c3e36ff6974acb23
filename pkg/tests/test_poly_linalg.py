import pytest

from frobwitt import linalg
from frobwitt.errors import ParseError
from frobwitt.poly import Poly, monomials


def test_parse_and_print(f5):
    f = Poly.parse("x1^2*x2 - x0^3 - x0*x2^2", f5)
    assert f.nvars == 3 and f.degree() == 3 and f.is_homogeneous()
    assert f.coeff((3, 0, 0)) == 4
    assert Poly.parse(str(f), f5) == f


def test_parse_generator(f9):
    f = Poly.parse("w*x0 + w^2*x1", f9)
    assert f.coeff((1, 0)) == f9.gen
    assert f.coeff((0, 1)) == f9.pow(f9.gen, 2)


@pytest.mark.parametrize("bad", ["", "(x0+x1)^2", "x0 + y"])
def test_parse_errors(f3, bad):
    with pytest.raises(ParseError):
        Poly.parse(bad, f3)


def test_json_terms(f3):
    f = Poly.from_json([{"coeff": 2, "exponents": [1, 1]}, {"coeff": 1, "exponents": [2, 0]}], f3)
    assert Poly.from_json(f.to_json(), f3) == f


def test_power_matches_repeated_product(f3):
    f = Poly.parse("x0 + 2*x1 + x0*x1", f3)
    g = Poly.constant(f3, 2)
    for k in range(6):
        assert f.pow(k) == g
        g = g * f


def test_frobenius_on_polys_is_additive(f5):
    f = Poly.parse("x0^2 + 3*x0*x1 + x1^2", f5)
    # (f)^5 has the coefficients of f at exponents multiplied by 5 (freshman's dream)
    f5th = f.pow(5)
    assert f5th.terms == {tuple(5 * a for a in e): c for e, c in f.terms.items()}


def test_monomials_count():
    assert len(monomials(3, 4)) == 15
    assert monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]


def test_linalg_nullspace_and_solve(f5):
    A = [[1, 2, 3], [2, 4, 2]]
    N = linalg.nullspace(f5, A, 3)
    assert len(N) == 1
    for v in N:
        assert linalg.matvec(f5, A, v) == [0, 0]
    x = linalg.solve(f5, A, [1, 0])
    assert linalg.matvec(f5, A, x) == [1, 0]
    assert linalg.solve(f5, [[1, 1], [1, 1]], [0, 1]) is None
    assert linalg.rank(f5, A) == 2
