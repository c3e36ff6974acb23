"""Sparse multivariate polynomials over F_q.

Terms live in a dict {exponent tuple: field element}.  Variables are
named x0, x1, ...; the generator of F_q over F_p is written w.
"""

from __future__ import annotations

import re
from typing import Iterable, Optional

from .errors import ParseError
from .fields import FiniteField


class Poly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: FiniteField, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ParseError(f"exponent {e} has wrong number of variables")
                if c:
                    clean[e] = c
        self.terms = clean

    # constructors

    @classmethod
    def monomial(cls, field, exps, coeff: int = 1) -> "Poly":
        return cls(field, len(exps), {tuple(exps): coeff})

    @classmethod
    def constant(cls, field, nvars, c: int = 1) -> "Poly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def parse(cls, text: str, field: FiniteField, nvars: Optional[int] = None) -> "Poly":
        return parse_poly(text, field, nvars)

    @classmethod
    def from_json(cls, data, field: FiniteField, nvars: Optional[int] = None) -> "Poly":
        if isinstance(data, str):
            return parse_poly(data, field, nvars)
        terms = {}
        for item in data:
            exps = tuple(int(x) for x in item["exponents"])
            c = _coeff_from_json(item["coeff"], field)
            terms[exps] = field.add(terms.get(exps, 0), c)
        nv = nvars if nvars is not None else (len(next(iter(terms))) if terms else 1)
        return cls(field, nv, terms)

    def to_json(self) -> list:
        return [{"coeff": self.field.format(c), "exponents": list(e)}
                for e, c in sorted(self.terms.items())]

    # queries

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coeff(self, exps) -> int:
        return self.terms.get(tuple(exps), 0)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mon = "*".join(
                f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k
            )
            cs = F.format(c)
            if F.m > 1 and "+" in cs:
                cs = f"({cs})"
            if not mon:
                parts.append(cs)
            elif c == 1:
                parts.append(mon)
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts)

    # arithmetic

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out.get(e, 0), c)
        return Poly(F, self.nvars, out)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, self.nvars, {e: F.mul(c, v) for e, v in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        return self.mul(other)

    def mul(self, other: "Poly", cap=None) -> "Poly":
        """Product; with `cap`, drop monomials exceeding cap componentwise."""
        F = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if cap is not None and any(a > b for a, b in zip(e, cap)):
                    continue
                out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
        return Poly(F, self.nvars, out)

    def __pow__(self, k: int) -> "Poly":
        return self.pow(k)

    def pow(self, k: int, cap=None) -> "Poly":
        result = Poly.constant(self.field, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result.mul(base, cap)
            k >>= 1
            if k:
                base = base.mul(base, cap)
        return result

    def frob_coeffs(self, k: int) -> "Poly":
        F = self.field
        return Poly(F, self.nvars, {e: F.frob(c, k) for e, c in self.terms.items()})

    def evaluate(self, point) -> int:
        F = self.field
        acc = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = F.mul(t, F.pow(x, k))
            acc = F.add(acc, t)
        return acc

    def substitute_linear(self, images: list) -> "Poly":
        """Replace x_i by the linear form images[i] (a Poly)."""
        F = self.field
        out = Poly(F, self.nvars)
        for e, c in self.terms.items():
            t = Poly.constant(F, self.nvars, c)
            for i, k in enumerate(e):
                if k:
                    t = t * images[i] ** k
            out = out + t
        return out


def monomials(nvars: int, degree: int) -> list:
    """All exponent vectors of the given total degree, lexicographically descending."""
    if nvars == 1:
        return [(degree,)] if degree >= 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


_TERM_SPLIT = re.compile(r"(?=[+-])")
_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_GEN = re.compile(r"^w(?:\^(\d+))?$")


def _coeff_from_json(c, field: FiniteField) -> int:
    if isinstance(c, int):
        return field.from_int(c)
    if isinstance(c, list):
        return field.from_coeffs(c)
    return _parse_coeff_expr(str(c), field)


def _parse_coeff_expr(s: str, field: FiniteField) -> int:
    s = s.replace(" ", "")
    total = 0
    for chunk in _TERM_SPLIT.split(s):
        if not chunk:
            continue
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:]
        val = 1
        for fac in chunk.split("*"):
            val = field.mul(val, _parse_scalar(fac, field))
        total = field.add(total, val if sign > 0 else field.neg(val))
    return total


def _parse_scalar(fac: str, field: FiniteField) -> int:
    if fac.isdigit():
        return field.from_int(int(fac))
    m = _GEN.match(fac)
    if m:
        if field.m == 1:
            raise ParseError("generator w used over a prime field")
        return field.pow(field.gen, int(m.group(1) or 1))
    raise ParseError(f"cannot parse coefficient factor {fac!r}")


def parse_poly(text: str, field: FiniteField, nvars: Optional[int] = None) -> Poly:
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ParseError("empty polynomial")
    if "(" in s:
        raise ParseError("parentheses are not supported; expand the polynomial")
    raw = []
    maxvar = -1
    for chunk in _TERM_SPLIT.split(s):
        if not chunk:
            continue
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:]
        if not chunk:
            raise ParseError(f"dangling sign in {text!r}")
        coeff = 1
        exps: dict = {}
        for fac in chunk.split("*"):
            m = _VAR.match(fac)
            if m:
                i = int(m.group(1))
                exps[i] = exps.get(i, 0) + int(m.group(2) or 1)
                maxvar = max(maxvar, i)
            else:
                coeff = field.mul(coeff, _parse_scalar(fac, field))
        if sign < 0:
            coeff = field.neg(coeff)
        raw.append((exps, coeff))
    nv = maxvar + 1 if nvars is None else nvars
    if maxvar >= nv:
        raise ParseError(f"variable x{maxvar} exceeds {nv} variables")
    terms: dict = {}
    for exps, c in raw:
        e = tuple(exps.get(i, 0) for i in range(nv))
        terms[e] = field.add(terms.get(e, 0), c)
    return Poly(field, max(nv, 1), terms)


def sum_polys(polys: Iterable[Poly], field: FiniteField, nvars: int) -> Poly:
    out = Poly(field, nvars)
    for q in polys:
        out = out + q
    return out
