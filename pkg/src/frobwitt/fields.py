"""Finite fields F_{p^m} with elements encoded as small integers.

An element is the integer sum(c_i * p**i) of its coefficient vector
(c_0, ..., c_{m-1}) in the basis 1, w, ..., w^{m-1}, where w is a root
of the chosen monic irreducible modulus.  For m == 1 this is the usual
residue in range(p).
"""

from __future__ import annotations

import random
from functools import lru_cache

from .errors import FieldError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


# dense polynomial helpers over F_p, little-endian coefficient lists

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def _pmulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b))
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, mod, p)


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a, e, mod, p):
    result = [1]
    base = _pmod(a, mod, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, mod, p)
        base = _pmulmod(base, base, mod, p)
        e >>= 1
    return result


def is_irreducible(modulus, p: int) -> bool:
    """Rabin-style test: no factor of degree <= deg/2."""
    f = _trim([c % p for c in modulus])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(1, m // 2 + 1):
        xp = _ppowmod(xp, p, f, p)
        diff = _trim([(a - b) % p for a, b in _zip_pad(xp, x)])
        if len(_pgcd(f, diff, p)) > 1:
            return False
    return True


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


@lru_cache(maxsize=None)
def default_modulus(p: int, m: int) -> tuple:
    """Smallest monic irreducible of degree m in lexicographic order
    (constant term varying fastest) whose root generates F_q^*."""
    if m == 1:
        return (0, 1)
    fallback = None
    for code in range(p ** m):
        low = [(code // p ** i) % p for i in range(m)]
        cand = tuple(low + [1])
        if low[0] == 0 or not is_irreducible(cand, p):
            continue
        if fallback is None:
            fallback = cand
        if _root_is_primitive(cand, p, m):
            return cand
    return fallback


def _root_is_primitive(mod, p, m):
    order = p ** m - 1
    for r in _prime_factors(order):
        if _trim(_ppowmod([0, 1], order // r, list(mod), p)) == [1]:
            return False
    return True


def _prime_factors(n):
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """The field F_{p^m}; elements are ints in range(p**m)."""

    _TABLE_LIMIT = 4096

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(_trim(modulus)) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus {modulus} is not monic of degree {m}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = modulus
        if m > 1:
            self._build_tables()

    # construction helpers

    @classmethod
    def from_spec(cls, spec: str) -> "FiniteField":
        """Parse "p", "p^m" or "p^m:c0,c1,...,cm" (little-endian modulus)."""
        spec = spec.strip()
        head, _, tail = spec.partition(":")
        if "^" in head:
            ps, ms = head.split("^")
            p, m = int(ps), int(ms)
        else:
            p, m = int(head), 1
        modulus = None
        if tail:
            modulus = tuple(int(c) for c in tail.split(","))
        return cls(p, m, modulus)

    @property
    def spec(self) -> str:
        return f"{self.p}^{self.m}:" + ",".join(str(c) for c in self.modulus)

    def __repr__(self):
        return f"FiniteField({self.spec!r})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = self._hash = hash((self.p, self.modulus))
        return h

    # encoding

    def to_coeffs(self, a: int) -> list:
        p = self.p
        return [(a // p ** i) % p for i in range(self.m)]

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            coeffs = _pmod(coeffs, self.modulus, self.p)
        return sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coeffs))

    def from_int(self, k: int) -> int:
        return k % self.p

    @property
    def gen(self) -> int:
        """The class of the variable modulo the modulus."""
        return self.p if self.m > 1 else self.modulus[0] * (self.p - 1) % self.p

    def elements(self):
        return range(self.q)

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.q)

    # arithmetic

    def _build_tables(self):
        q, p, m = self.q, self.p, self.m
        self._frob = {}
        self._add = [[0] * q for _ in range(q)]
        for a in range(q):
            ca = self.to_coeffs(a)
            for b in range(q):
                cb = self.to_coeffs(b)
                self._add[a][b] = sum(((x + y) % p) * p ** i
                                      for i, (x, y) in enumerate(zip(ca, cb)))
        self._neg = [self.from_coeffs([-c for c in self.to_coeffs(a)]) for a in range(q)]
        # log / exp tables from a primitive element
        mod = list(self.modulus)
        prim = None
        for cand in range(2, q):
            if _root_is_primitive_elem(self.to_coeffs(cand), mod, p, q):
                prim = cand
                break
        if prim is None:  # q == 2 would land here, but m > 1 implies q >= 4
            raise FieldError("no primitive element found")
        self._exp = [0] * (2 * (q - 1))
        self._log = [0] * q
        cur = [1]
        pc = self.to_coeffs(prim)
        for k in range(q - 1):
            code = self.from_coeffs(cur + [0] * (m - len(cur)))
            self._exp[k] = code
            self._exp[k + q - 1] = code
            self._log[code] = k
            cur = _pmulmod(cur, pc, mod, p) or [0]

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        if self.m == 1:
            return pow(a, -1, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if self.m == 1:
            if a == 0:
                return 0 if k > 0 else (1 if k == 0 else self.inv(0))
            return pow(a, k % (self.p - 1) if k < 0 else k, self.p)
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def frob(self, a: int, k: int = 1) -> int:
        """a ** (p ** k); negative k gives the inverse automorphism."""
        if self.m == 1:
            return a
        k %= self.m
        if k == 0:
            return a
        table = self._frob.get(k)
        if table is None:
            e = self.p ** k
            table = self._frob[k] = [self.pow(x, e) for x in range(self.q)]
        return table[a]

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    def format(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        cs = self.to_coeffs(a)
        parts = []
        for i, c in enumerate(cs):
            if c == 0:
                continue
            mon = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if not mon:
                parts.append(str(c))
            else:
                parts.append(mon if c == 1 else f"{c}*{mon}")
        return "+".join(parts) if parts else "0"


def _root_is_primitive_elem(coeffs, mod, p, q):
    order = q - 1
    for r in _prime_factors(order):
        if _trim(_ppowmod(_trim(coeffs), order // r, mod, p)) == [1]:
            return False
    return True


@lru_cache(maxsize=None)
def get_field(p: int, m: int = 1, modulus=None) -> FiniteField:
    return FiniteField(p, m, modulus)
