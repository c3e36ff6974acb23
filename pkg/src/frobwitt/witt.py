"""Truncated Witt vectors W_n(A) with the operators F, V, R and p.

Over a finite field the ring operations go through the Galois-ring
isomorphism (a_0, ..., a_{n-1}) <-> sum p^i [a_i^{p^-i}].  Over any
other coefficient ring of characteristic p the universal sum/product
polynomials are evaluated directly.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Any, Sequence

from .errors import ShapeMismatch
from .fields import FiniteField
from .galois import GaloisRing, GaloisScalar, get_ring


# ---------------------------------------------------------------------------
# integer polynomials as {exponent tuple: int}

def _padd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        c = out.get(k, 0) + sign * v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            c = out.get(k, 0) + va * vb
            if c:
                out[k] = c
            else:
                out.pop(k, None)
    return out


def _ppow(a: dict, e: int, nvars: int) -> dict:
    result = {(0,) * nvars: 1}
    base = a
    while e:
        if e & 1:
            result = _pmul(result, base)
        e >>= 1
        if e:
            base = _pmul(base, base)
    return result


def _pscale(a: dict, c: int) -> dict:
    return {k: v * c for k, v in a.items() if v * c}


def _var(i: int, nvars: int) -> dict:
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): 1}


def ghost_poly(p: int, k: int, offset: int, nvars: int) -> dict:
    """w_k(X) = sum_{i<=k} p^i X_i^{p^{k-i}}, variables starting at `offset`."""
    out: dict = {}
    for i in range(k + 1):
        out = _padd(out, _pscale(_ppow(_var(offset + i, nvars), p ** (k - i), nvars), p ** i))
    return out


class UniversalWittPolys:
    """Integer polynomials S_k, P_k in X_0..X_{n-1}, Y_0..Y_{n-1}.

    Computed lazily by solving the ghost identities one index at a time.
    """

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.nvars = 2 * n
        self._sum: list = []
        self._prod: list = []

    def _solve(self, cache: list, combine, k: int) -> dict:
        p, nv = self.p, self.nvars
        while len(cache) <= k:
            j = len(cache)
            target = combine(ghost_poly(p, j, 0, nv), ghost_poly(p, j, self.n, nv))
            for i, s in enumerate(cache):
                target = _padd(target, _pscale(_ppow(s, p ** (j - i), nv), p ** i), -1)
            pj = p ** j
            quotient = {}
            for key, v in target.items():
                if v % pj:
                    raise ArithmeticError("ghost recursion not integral")
                quotient[key] = v // pj
            cache.append(quotient)
        return cache[k]

    def sum_poly(self, k: int) -> dict:
        return self._solve(self._sum, _padd, k)

    def prod_poly(self, k: int) -> dict:
        return self._solve(self._prod, _pmul, k)

    def ghost(self, k: int, which: int = 0) -> dict:
        return ghost_poly(self.p, k, which * self.n, self.nvars)

    @staticmethod
    def compose_ghost(poly_list: Sequence[dict], p: int, k: int, nvars: int) -> dict:
        """w_k evaluated on the polynomial vector poly_list."""
        out: dict = {}
        for i in range(k + 1):
            out = _padd(out, _pscale(_ppow(poly_list[i], p ** (k - i), nvars), p ** i))
        return out


@lru_cache(maxsize=None)
def universal_polys(p: int, n: int) -> UniversalWittPolys:
    return UniversalWittPolys(p, n)


def _evaluate(poly: dict, values: Sequence[Any], zero, p: int):
    """Evaluate an integer polynomial, coefficients reduced mod p."""
    acc = zero
    powers: dict = {}
    for key, c in poly.items():
        c %= p
        if not c:
            continue
        term = None
        for i, e in enumerate(key):
            if e:
                pw = powers.get((i, e))
                if pw is None:
                    pw = values[i] ** e
                    powers[(i, e)] = pw
                term = pw if term is None else term * pw
        if term is None:
            term = zero + 1
        acc = acc + c * term
    return acc


# ---------------------------------------------------------------------------

class WittVector:
    """Length-n Witt vector; immutable.

    `ring` is a FiniteField (coordinates are encoded ints) or any object
    with attributes `p` and `zero` whose elements support +, * and int
    scaling (characteristic p assumed).
    """

    __slots__ = ("coords", "ring")

    def __init__(self, coords: Sequence[Any], ring):
        if len(coords) < 1:
            raise ValueError("Witt vectors have length >= 1")
        self.coords = tuple(coords)
        self.ring = ring

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def over_field(self) -> bool:
        return isinstance(self.ring, FiniteField)

    @classmethod
    def zero(cls, ring, n: int) -> "WittVector":
        z = 0 if isinstance(ring, FiniteField) else ring.zero
        return cls([z] * n, ring)

    @classmethod
    def one(cls, ring, n: int) -> "WittVector":
        if isinstance(ring, FiniteField):
            return cls([1] + [0] * (n - 1), ring)
        return cls([ring.zero + 1] + [ring.zero] * (n - 1), ring)

    @classmethod
    def teichmuller(cls, a, ring, n: int) -> "WittVector":
        z = 0 if isinstance(ring, FiniteField) else ring.zero
        return cls([a] + [z] * (n - 1), ring)

    def __eq__(self, other):
        return (
            isinstance(other, WittVector)
            and self.ring == other.ring
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        if self.over_field:
            inner = ", ".join(self.ring.format(c) for c in self.coords)
        else:
            inner = ", ".join(str(c) for c in self.coords)
        return f"WittVector({inner})"

    def __add__(self, other):
        return witt_add(self, other)

    def __sub__(self, other):
        return witt_sub(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __mul__(self, other):
        return witt_mul(self, other)

    def to_json(self) -> list:
        if self.over_field:
            return [str(c) for c in self.coords]
        return [str(c) for c in self.coords]

    @classmethod
    def from_json(cls, data, field: FiniteField) -> "WittVector":
        return cls([int(x) % field.q for x in data], field)


def _check(a: WittVector, b: WittVector):
    if len(a.coords) != len(b.coords):
        raise ShapeMismatch(f"Witt vectors of lengths {a.n} and {b.n}")
    if a.ring is not b.ring and a.ring != b.ring:
        raise ShapeMismatch("Witt vectors over different coefficient rings")


def _galois(a: WittVector) -> GaloisRing:
    return get_ring(a.ring, a.n)


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    _check(a, b)
    if a.over_field:
        R = _galois(a)
        return _from_gr(R, R.add(_to_gr(R, a), _to_gr(R, b)))
    return _universal_op(a, b, "sum")


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    _check(a, b)
    if a.over_field:
        R = _galois(a)
        return _from_gr(R, R.mul(_to_gr(R, a), _to_gr(R, b)))
    return _universal_op(a, b, "prod")


def witt_neg(a: WittVector) -> WittVector:
    if a.over_field:
        R = _galois(a)
        return _from_gr(R, R.neg(_to_gr(R, a)))
    minus_one = WittVector([a.ring.zero - 1] + [a.ring.zero] * (a.n - 1), a.ring)
    if a.p != 2:
        return witt_mul(minus_one, a)
    # -1 = (1, 1, 1, ...) in W(F_2-algebras)
    ones = WittVector([a.ring.zero + 1] * a.n, a.ring)
    return witt_mul(ones, a)


def witt_sub(a: WittVector, b: WittVector) -> WittVector:
    return witt_add(a, witt_neg(b))


def witt_add_universal(a: WittVector, b: WittVector) -> WittVector:
    """Sum through the universal polynomials, whatever the coefficient ring."""
    _check(a, b)
    return _universal_op(a, b, "sum")


def witt_mul_universal(a: WittVector, b: WittVector) -> WittVector:
    _check(a, b)
    return _universal_op(a, b, "prod")


def _universal_op(a: WittVector, b: WittVector, kind: str) -> WittVector:
    n, p = a.n, a.p
    U = universal_polys(p, n)
    if a.over_field:
        F = a.ring
        vals = list(a.coords) + list(b.coords)
        out = []
        for k in range(n):
            poly = U.sum_poly(k) if kind == "sum" else U.prod_poly(k)
            out.append(_eval_field(poly, vals, F))
        return WittVector(out, F)
    vals = list(a.coords) + list(b.coords)
    zero = a.ring.zero
    out = []
    for k in range(n):
        poly = U.sum_poly(k) if kind == "sum" else U.prod_poly(k)
        out.append(_evaluate(poly, vals, zero, p))
    return WittVector(out, a.ring)


def _eval_field(poly: dict, vals, F: FiniteField) -> int:
    acc = 0
    for key, c in poly.items():
        c %= F.p
        if not c:
            continue
        term = F.from_int(c)
        for v, e in zip(vals, key):
            if e:
                term = F.mul(term, F.pow(v, e))
        acc = F.add(acc, term)
    return acc


# ---------------------------------------------------------------------------
# operators

def frobenius_F(a: WittVector) -> WittVector:
    if a.over_field:
        F = a.ring
        return WittVector([F.frob(c, 1) for c in a.coords], F)
    p = a.p
    return WittVector([c ** p for c in a.coords], a.ring)


def verschiebung_V(a: WittVector) -> WittVector:
    z = 0 if a.over_field else a.ring.zero
    return WittVector((z,) + a.coords, a.ring)


def restriction_R(a: WittVector) -> WittVector:
    if a.n < 2:
        raise ShapeMismatch("restriction needs length >= 2")
    return WittVector(a.coords[:-1], a.ring)


def mult_p(a: WittVector) -> WittVector:
    """p * a, length preserved: (0, a_0^p, ..., a_{n-2}^p)."""
    if a.n == 1:
        return WittVector.zero(a.ring, 1)
    return verschiebung_V(frobenius_F(restriction_R(a)))


def pad(a: WittVector, n: int) -> WittVector:
    z = 0 if a.over_field else a.ring.zero
    return WittVector(a.coords + (z,) * (n - a.n), a.ring)


def sigma_witt(a: WittVector, k: int = 1) -> WittVector:
    """sigma^k on W_n(F_q): coordinatewise p^k-th power (k may be negative)."""
    if not a.over_field:
        raise ShapeMismatch("sigma is defined on Witt vectors over finite fields")
    F = a.ring
    return WittVector([F.frob(c, k) for c in a.coords], F)


def scalar_mul(r, x: WittVector) -> WittVector:
    """Action of r in W_n(F_q) (WittVector or GaloisScalar) on x in W_j, j <= n."""
    if isinstance(r, GaloisScalar):
        r = from_integral(r)
    if r.n < x.n:
        raise ShapeMismatch("scalar shorter than vector")
    r = WittVector(r.coords[: x.n], r.ring)
    return witt_mul(r, x)


# ---------------------------------------------------------------------------
# integral (Galois ring) representation

_CACHE_SIZE = 1 << 16


def _to_gr(R: GaloisRing, a: WittVector):
    cache = R.witt_memo[0]
    out = cache.get(a.coords)
    if out is None:
        if len(cache) > _CACHE_SIZE:
            cache.clear()
        out = cache[a.coords] = _to_gr_coords(R, a.coords)
    return out


def _to_gr_coords(R: GaloisRing, coords: tuple):
    F = R.field
    p = R.p
    acc = R.zero
    pk = 1
    for i, c in enumerate(coords):
        if c:
            t = R.teich(F.frob(c, -i))
            acc = R.add(acc, R.scale(t, pk))
        pk *= p
    return acc


def _from_gr(R: GaloisRing, x) -> WittVector:
    cache = R.witt_memo[1]
    out = cache.get(x)
    if out is None:
        if len(cache) > _CACHE_SIZE:
            cache.clear()
        out = cache[x] = _from_gr_coords(R, x)
    return WittVector(out, R.field)


def _from_gr_coords(R: GaloisRing, x) -> tuple:
    F = R.field
    coords = []
    cur = x
    for i in range(R.n):
        digit = R.residue(cur)
        coords.append(F.frob(digit, i))
        if i + 1 < R.n:
            cur = R.divp(R.sub(cur, R.teich(digit)), 1)
    return tuple(coords)


def to_integral(a: WittVector) -> GaloisScalar:
    if not a.over_field:
        raise ShapeMismatch("integral form exists only over a finite field")
    R = _galois(a)
    return GaloisScalar(R, _to_gr(R, a))


def from_integral(x: GaloisScalar) -> WittVector:
    return _from_gr(x.ring, x.value)


def witt_from_int(k: int, field: FiniteField, n: int) -> WittVector:
    R = get_ring(field, n)
    return _from_gr(R, R.from_int(k))
