"""Galois rings GR(p^n, m) = W_n(F_{p^m}).

Elements are tuples of m integers modulo p**n, the coefficients of a
polynomial in t reduced by a monic lift of the residue field modulus.
The lift is chosen so that t is a Teichmueller element; the ring
Frobenius sigma is then simply t -> t**p on coefficients.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .fields import FiniteField, get_field


def _polymul_mod(a, b, mod, N):
    """Product in (Z/N)[t]/(mod), mod monic of degree len(a)."""
    m = len(mod) - 1
    out = [0] * (2 * m - 1) if m else [0]
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    for k in range(len(out) - 1, m - 1, -1):
        c = out[k] % N
        if c:
            for i in range(m):
                out[k - m + i] -= c * mod[i]
        out[k] = 0
    return tuple(c % N for c in out[:m])


def _teichmuller_modulus(field: FiniteField, n: int) -> tuple:
    p, m = field.p, field.m
    N = p ** n
    if m == 1:
        return (0, 1)
    naive = tuple(field.modulus)
    one = tuple([1] + [0] * (m - 1))
    t = tuple([0, 1] + [0] * (m - 2))

    def mul(a, b):
        return _polymul_mod(a, b, naive, N)

    def power(a, e):
        r, b = one, a
        while e:
            if e & 1:
                r = mul(r, b)
            b = mul(b, b)
            e >>= 1
        return r

    tau = power(t, field.q ** (n - 1))
    # prod_{i<m} (X - tau^{p^i}) with coefficients in the naive ring
    poly = [one]
    conj = tau
    for _ in range(m):
        neg = tuple(-c % N for c in conj)
        new = [tuple([0] * m)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            new[k + 1] = tuple((x + y) % N for x, y in zip(new[k + 1], c))
            prod = mul(c, neg)
            new[k] = tuple((x + y) % N for x, y in zip(new[k], prod))
        poly = new
        conj = power(conj, p)
    out = []
    for c in poly:
        if any(c[1:]):
            raise ArithmeticError("Teichmueller modulus did not descend")
        out.append(c[0])
    return tuple(out)


class GaloisRing:
    """W_n(F_q) in the integral (Galois ring) representation."""

    def __init__(self, field: FiniteField, n: int):
        if n < 1:
            raise ValueError("length must be >= 1")
        self.field = field
        self.p = field.p
        self.m = field.m
        self.n = n
        self.N = field.p ** n
        self.modulus = _teichmuller_modulus(field, n)
        self.zero = tuple([0] * self.m)
        self.one = tuple([1] + [0] * (self.m - 1))
        self._teich = [self._compute_teich(a) for a in range(field.q)]
        self._sigma_cache = {}
        # Witt coordinates <-> ring element conversions (to, from)
        self.witt_memo = ({}, {})

    def __repr__(self):
        return f"GaloisRing({self.field.spec!r}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, GaloisRing) and self.field == other.field and self.n == other.n

    def __hash__(self):
        return hash((self.field, self.n))

    # basic arithmetic on coefficient tuples

    def add(self, a, b):
        N = self.N
        return tuple((x + y) % N for x, y in zip(a, b))

    def sub(self, a, b):
        N = self.N
        return tuple((x - y) % N for x, y in zip(a, b))

    def neg(self, a):
        N = self.N
        return tuple(-x % N for x in a)

    def mul(self, a, b):
        if self.m == 1:
            return (a[0] * b[0] % self.N,)
        return _polymul_mod(a, b, self.modulus, self.N)

    def scale(self, a, k: int):
        N = self.N
        return tuple(x * k % N for x in a)

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        r, b = self.one, a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def from_int(self, k: int):
        return tuple([k % self.N] + [0] * (self.m - 1))

    def is_zero(self, a) -> bool:
        return not any(a)

    def valuation(self, a) -> int:
        """p-adic valuation; n for zero."""
        v = self.n
        p = self.p
        for c in a:
            if c:
                k = 0
                while c % p == 0:
                    c //= p
                    k += 1
                v = min(v, k)
        return v

    def is_unit(self, a) -> bool:
        return any(c % self.p for c in a)

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit in {self}")
        F = self.field
        x0 = F.inv(self.residue(a))
        x = self.lift(x0)
        two = self.from_int(2)
        prec = 1
        while prec < self.n:
            x = self.mul(x, self.sub(two, self.mul(a, x)))
            prec *= 2
        return x

    def divp(self, a, v: int):
        """a / p**v; a must have valuation >= v.  Result is defined mod p**(n-v)."""
        if v == 0:
            return a
        pv = self.p ** v
        if any(c % pv for c in a):
            raise ArithmeticError(f"{a} not divisible by p^{v}")
        return tuple(c // pv for c in a)

    def div(self, a, b):
        """Some x with b*x == a; requires valuation(a) >= valuation(b)."""
        vb = self.valuation(b)
        if vb >= self.n:
            if self.is_zero(a):
                return self.zero
            raise ArithmeticError("division by zero")
        va = self.valuation(a)
        if va < vb:
            raise ArithmeticError(f"{a} not divisible by {b}")
        return self.mul(self.divp(a, vb), self.inv(self.divp(b, vb)))

    def reduce_mod_pk(self, a, k: int):
        pk = self.p ** k
        return tuple(c % pk for c in a)

    # residue field interaction

    def residue(self, a) -> int:
        return self.field.from_coeffs([c % self.p for c in a])

    def lift(self, x: int):
        return tuple(self.field.to_coeffs(x))

    def _compute_teich(self, x: int):
        a = self.lift(x)
        if self.n == 1:
            return a
        return self.pow(a, self.field.q ** (self.n - 1))

    def teich(self, x: int):
        return self._teich[x]

    # Frobenius automorphism

    def sigma(self, a, k: int = 1):
        if self.m == 1:
            return a
        k %= self.m
        if k == 0:
            return a
        images = self._sigma_cache.get(k)
        if images is None:
            t = tuple([0, 1] + [0] * (self.m - 2))
            tp = self.pow(t, self.p ** k)
            images = [self.one]
            for _ in range(1, self.m):
                images.append(self.mul(images[-1], tp))
            self._sigma_cache[k] = images
        out = self.zero
        for c, img in zip(a, images):
            if c:
                out = self.add(out, self.scale(img, c))
        return out

    # misc

    def random(self, rng: random.Random):
        return tuple(rng.randrange(self.N) for _ in range(self.m))

    def elements(self):
        import itertools
        return (tuple(c) for c in itertools.product(range(self.N), repeat=self.m))

    def format(self, a) -> str:
        if self.m == 1:
            return str(a[0])
        return "(" + ",".join(str(c) for c in a) + ")"

    def parse(self, s):
        if isinstance(s, (list, tuple)):
            vals = [int(c) for c in s]
        else:
            s = str(s).strip().strip("()")
            vals = [int(c) for c in s.split(",")] if s else [0]
        vals = vals + [0] * (self.m - len(vals))
        return tuple(v % self.N for v in vals[: self.m])


@lru_cache(maxsize=None)
def get_ring(field: FiniteField, n: int) -> GaloisRing:
    return GaloisRing(field, n)


class GaloisScalar:
    """A value in GR(p^n, m) with operator overloading."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: GaloisRing, value):
        if isinstance(value, int):
            value = ring.from_int(value)
        self.ring = ring
        self.value = tuple(value)

    @classmethod
    def of(cls, p: int, n: int, value, m: int = 1) -> "GaloisScalar":
        return cls(get_ring(get_field(p, m), n), value)

    def _coerce(self, other):
        if isinstance(other, GaloisScalar):
            if other.ring != self.ring:
                from .errors import ShapeMismatch
                raise ShapeMismatch("scalars from different Galois rings")
            return other.value
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return GaloisScalar(self.ring, self.ring.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return GaloisScalar(self.ring, self.ring.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return GaloisScalar(self.ring, self.ring.sub(o, self.value))

    def __neg__(self):
        return GaloisScalar(self.ring, self.ring.neg(self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return GaloisScalar(self.ring, self.ring.mul(self.value, o))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return GaloisScalar(self.ring, self.ring.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.ring.from_int(other)
        return isinstance(other, GaloisScalar) and self.ring == other.ring and self.value == other.value

    def __hash__(self):
        return hash((self.ring, self.value))

    def __repr__(self):
        return f"GaloisScalar({self.ring.format(self.value)} in W_{self.ring.n}(F_{self.ring.field.q}))"

    def valuation(self) -> int:
        return self.ring.valuation(self.value)

    def sigma(self, k: int = 1) -> "GaloisScalar":
        return sigma(self, k)


def sigma(r: GaloisScalar, k: int = 1) -> GaloisScalar:
    """k-fold Witt Frobenius on W_n(F_q); negative k allowed."""
    return GaloisScalar(r.ring, r.ring.sigma(r.value, k))
