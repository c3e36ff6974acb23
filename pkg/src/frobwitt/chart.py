"""Coordinate rings of the two affine charts of a plane curve, lifted to Z/p^N.

The curve f(x, y, z) = 0 is arranged so that x^delta has a nonzero
coefficient; then {y != 0} and {z != 0} cover it.  With u = x/z and
v = y/z the ring of the overlap is Z/p^N[u, v, 1/v] / (f(u, v, 1)),
free over Z/p^N[v, 1/v] on 1, u, ..., u^(delta-1).  An element is a
(delta x width) integer array: row a holds the Laurent polynomial in v
multiplying u^a, column c stands for v^(lo + c).

In these coordinates the monomial u^a v^b lies in the ring of
{z != 0} iff b >= 0, and in the ring of {y != 0} iff b <= -a.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation, WindowOverflow
from .poly import Poly

WINDOW_START = 64
WINDOW_CAP = 1024


@dataclass
class El:
    arr: np.ndarray
    lo: int

    @property
    def hi(self) -> int:
        return self.lo + self.arr.shape[1] - 1

    def is_zero(self) -> bool:
        return self.arr.shape[1] == 0 or not self.arr.any()


def _trim(arr: np.ndarray, lo: int) -> El:
    cols = np.flatnonzero(arr.any(axis=0)) if arr.size else np.array([], dtype=int)
    if cols.size == 0:
        return El(np.zeros((arr.shape[0], 0), dtype=np.int64), 0)
    a, b = cols[0], cols[-1]
    return El(np.ascontiguousarray(arr[:, a:b + 1]), lo + int(a))


class ChartRing:
    def __init__(self, f: Poly, N: int, window: int = WINDOW_START, cap: int = WINDOW_CAP):
        F = f.field
        if F.m != 1:
            raise InvariantViolation("chart rings are implemented over prime fields only")
        if f.nvars != 3 or not f.is_homogeneous():
            raise InvariantViolation("expected a homogeneous plane curve equation")
        self.p = F.p
        self.N = N
        self.mod = F.p ** N
        self.delta = f.degree()
        self.window = window
        self.cap = cap
        self.f = f
        d = self.delta
        lead = f.coeff((d, 0, 0))
        if not lead:
            raise InvariantViolation("x0^deg must have a nonzero coefficient")
        inv = pow(int(lead), -1, self.mod)
        # u^d = sum_{a<d} u^a Q_a(v), Q_a a polynomial in v
        Q = np.zeros((d, d + 1), dtype=np.int64)
        for (a, b, _c), coef in f.terms.items():
            if a == d:
                continue
            Q[a, b] = (-int(coef) * inv) % self.mod
        self.Q = Q

    # construction

    def zero(self) -> El:
        return El(np.zeros((self.delta, 0), dtype=np.int64), 0)

    def const(self, c: int) -> El:
        arr = np.zeros((self.delta, 1), dtype=np.int64)
        arr[0, 0] = c % self.mod
        return _trim(arr, 0)

    def monomial(self, a: int, b: int, c: int = 1) -> El:
        arr = np.zeros((self.delta, 1), dtype=np.int64)
        arr[a, 0] = c % self.mod
        return _trim(arr, b)

    def from_terms(self, terms: dict) -> El:
        """{(a, b): coeff} with a < delta."""
        if not terms:
            return self.zero()
        lo = min(b for _, b in terms)
        hi = max(b for _, b in terms)
        arr = np.zeros((self.delta, hi - lo + 1), dtype=np.int64)
        for (a, b), c in terms.items():
            arr[a, b - lo] = (arr[a, b - lo] + c) % self.mod
        return _trim(arr, lo)

    def terms(self, x: El) -> dict:
        out = {}
        rows, cols = np.nonzero(x.arr)
        for a, c in zip(rows, cols):
            out[(int(a), int(c) + x.lo)] = int(x.arr[a, c])
        return out

    # window control

    def _check(self, x: El) -> El:
        if x.is_zero():
            return x
        reach = max(-x.lo, x.hi)
        while reach > self.window:
            if self.window >= self.cap:
                raise WindowOverflow(
                    f"v-degree {reach} exceeds the window cap {self.cap}"
                )
            self.window *= 2
        return x

    # arithmetic modulo p^k (k <= N)

    def _align(self, x: El, y: El):
        if x.is_zero():
            return np.zeros((self.delta, y.arr.shape[1]), dtype=np.int64), y.arr, y.lo
        if y.is_zero():
            return x.arr, np.zeros((self.delta, x.arr.shape[1]), dtype=np.int64), x.lo
        lo = min(x.lo, y.lo)
        hi = max(x.hi, y.hi)
        w = hi - lo + 1
        a = np.zeros((self.delta, w), dtype=np.int64)
        b = np.zeros((self.delta, w), dtype=np.int64)
        a[:, x.lo - lo:x.lo - lo + x.arr.shape[1]] = x.arr
        b[:, y.lo - lo:y.lo - lo + y.arr.shape[1]] = y.arr
        return a, b, lo

    def add(self, x: El, y: El, mod: int | None = None) -> El:
        mod = self.mod if mod is None else mod
        a, b, lo = self._align(x, y)
        return _trim((a + b) % mod, lo)

    def sub(self, x: El, y: El, mod: int | None = None) -> El:
        mod = self.mod if mod is None else mod
        a, b, lo = self._align(x, y)
        return _trim((a - b) % mod, lo)

    def scale(self, x: El, c: int, mod: int | None = None) -> El:
        mod = self.mod if mod is None else mod
        return _trim((x.arr * (c % mod)) % mod, x.lo)

    def reduce_mod(self, x: El, mod: int) -> El:
        return _trim(x.arr % mod, x.lo)

    def mul(self, x: El, y: El, mod: int | None = None) -> El:
        mod = self.mod if mod is None else mod
        if x.is_zero() or y.is_zero():
            return self.zero()
        d = self.delta
        wx, wy = x.arr.shape[1], y.arr.shape[1]
        w = wx + wy - 1 + d * d  # room for the reduction tail
        P = np.zeros((2 * d - 1, w), dtype=np.int64)
        for a1 in range(d):
            r1 = x.arr[a1]
            if not r1.any():
                continue
            for a2 in range(d):
                r2 = y.arr[a2]
                if r2.any():
                    P[a1 + a2, :wx + wy - 1] += np.convolve(r1, r2)
            P %= mod
        for k in range(2 * d - 2, d - 1, -1):
            row = P[k]
            if not row.any():
                continue
            for a in range(d):
                q = self.Q[a]
                if q.any():
                    P[k - d + a] = (P[k - d + a] + np.convolve(row, q)[:w]) % mod
            P[k] = 0
        return self._check(_trim(P[:d] % mod, x.lo + y.lo))

    def pow(self, x: El, e: int, mod: int | None = None) -> El:
        result = self.const(1)
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base, mod)
            e >>= 1
            if e:
                base = self.mul(base, base, mod)
        return result

    def divide_p(self, x: El, k: int) -> El:
        """x / p^k, assuming every coefficient is divisible."""
        pk = self.p ** k
        if (x.arr % pk).any():
            raise ArithmeticError("element not divisible by p^k")
        return _trim(x.arr // pk, x.lo)

    # chart membership

    def split(self, x: El):
        """x = alpha + beta + gamma: alpha on {y != 0}, beta on {z != 0}, gamma in neither."""
        d = self.delta
        w = x.arr.shape[1]
        if w == 0:
            return self.zero(), self.zero(), self.zero()
        bs = np.arange(x.lo, x.lo + w)[None, :]
        rows = np.arange(d)[:, None]
        in_z = np.broadcast_to(bs >= 0, (d, w))
        in_y = (bs <= -rows) & ~in_z
        gam = ~in_z & ~in_y
        return (_trim(np.where(in_y, x.arr, 0), x.lo),
                _trim(np.where(in_z, x.arr, 0), x.lo),
                _trim(np.where(gam, x.arr, 0), x.lo))

    def h_basis(self) -> list:
        """Monomials (a, b) spanning the complement: -a < b < 0."""
        return [(a, b) for a in range(self.delta) for b in range(-a + 1, 0)]
