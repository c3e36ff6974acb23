"""Monomial Cech cohomology on P^n and divisor-twisted Frobenius actions.

H^n(P^n, O(-m)) has basis x^{-a} with every a_i >= 1 and sum(a) = m;
multiplying by a form and dropping every monomial with a nonnegative
exponent realises the module structure over the homogeneous coordinate
ring.  H^0(P^n, O(t)) is the space of forms of degree t.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from . import linalg
from .errors import InvariantViolation, ShapeMismatch
from .fields import FiniteField
from .poly import Poly, monomials


# ---------------------------------------------------------------------------
# p^e-linear operators

@dataclass
class PLinearOp:
    """v -> matrix * v^[p^e] on F_q^dim; e may be negative (p^{-e}-linear)."""

    field: FiniteField
    basis: list
    e: int
    matrix: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def apply(self, v):
        F = self.field
        tw = [F.frob(c, self.e) for c in v]
        return linalg.matvec(F, self.matrix, tw)

    def __call__(self, v):
        return self.apply(v)

    def compose(self, other: "PLinearOp") -> "PLinearOp":
        """self o other."""
        F = self.field
        tw = [[F.frob(c, self.e) for c in row] for row in other.matrix]
        M = _matmul(F, self.matrix, tw)
        return PLinearOp(F, self.basis, self.e + other.e, M)

    def power(self, k: int) -> "PLinearOp":
        op = self
        for _ in range(k - 1):
            op = self.compose(op)
        return op

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def to_json(self) -> dict:
        F = self.field
        return {
            "basis": [list(b) for b in self.basis],
            "e": self.e,
            "matrix": [[F.format(c) for c in row] for row in self.matrix],
        }


def _matmul(F, A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        out.append([F.sum(F.mul(row[k], B[k][j]) for k in range(len(B)) if row[k]) for j in range(cols)])
    return out


@dataclass
class StableImage:
    dim: int
    basis: list
    steps: int


def sstab_dim(op: PLinearOp) -> StableImage:
    """Dimension and RREF basis of the stable image of iterating op."""
    F = op.field
    cur = [[1 if i == k else 0 for i in range(op.dim)] for k in range(op.dim)]
    steps = 0
    while True:
        imgs = [op.apply(v) for v in cur]
        nxt = linalg.row_space_basis(F, imgs)
        steps += 1
        if len(nxt) == len(cur):
            return StableImage(len(nxt), nxt, steps)
        cur = nxt


# ---------------------------------------------------------------------------
# cohomology of line bundles on P^n

@dataclass
class CohSpace:
    n: int
    m: int
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)


def serre_basis(n: int, m: int) -> CohSpace:
    """Basis x^{-a} of H^n(P^n, O(-m))."""
    if n < 1 or m < 0:
        raise ShapeMismatch("need n >= 1 and m >= 0")
    if m < n + 1:
        return CohSpace(n, m, [])
    basis = [tuple(x + 1 for x in e) for e in monomials(n + 1, m - n - 1)]
    return CohSpace(n, m, basis)


@dataclass
class CohClass:
    """sum c_a x^{-a} in H^n(P^n, O(-m))."""

    field: FiniteField
    n: int
    m: int
    coeffs: dict

    def __bool__(self):
        return any(self.coeffs.values())

    def vector(self, space: CohSpace):
        return [self.coeffs.get(a, 0) for a in space.basis]


def multiply_project(c: CohClass, g: Poly) -> CohClass:
    if g.nvars != c.n + 1:
        raise ShapeMismatch("form has wrong number of variables")
    if not g.is_homogeneous():
        raise ShapeMismatch("form is not homogeneous")
    F = c.field
    t = g.degree() if g else 0
    out: dict = {}
    for a, ca in c.coeffs.items():
        if not ca:
            continue
        for b, cb in g.terms.items():
            new = tuple(x - y for x, y in zip(a, b))
            if all(x >= 1 for x in new):
                out[new] = F.add(out.get(new, 0), F.mul(ca, cb))
    return CohClass(F, c.n, c.m - t, {k: v for k, v in out.items() if v})


def twisted_frobenius(field: FiniteField, n: int, m: int, G: Poly, e: int) -> PLinearOp:
    """x^{-a} -> project(x^{-p^e a} * G) on H^n(P^n, O(-m)); deg G = (p^e - 1) m."""
    q_e = field.p ** e
    if G and G.degree() != (q_e - 1) * m:
        raise ShapeMismatch(f"twisting form has degree {G.degree()}, expected {(q_e - 1) * m}")
    space = serre_basis(n, m)
    dim = space.dim
    A = [[0] * dim for _ in range(dim)]
    for col, a in enumerate(space.basis):
        for row, a2 in enumerate(space.basis):
            A[row][col] = G.coeff(tuple(q_e * x - y for x, y in zip(a, a2)))
    return PLinearOp(field, space.basis, e, A)


def _check_cover_data(field: FiniteField, n: int, s: int, d: int, D: Poly, e: int) -> int:
    p = field.p
    if d < 1 or d % p == 0:
        raise InvariantViolation(f"d = {d} must be positive and prime to p = {p}")
    if (p ** e - 1) % d:
        raise InvariantViolation(f"d = {d} does not divide p^e - 1 = {p ** e - 1}")
    if D.nvars != n + 1:
        raise ShapeMismatch(f"divisor form must have {n + 1} variables")
    if not D or not D.is_homogeneous() or D.degree() != s * d:
        raise InvariantViolation(f"divisor form must be nonzero homogeneous of degree s*d = {s * d}")
    return (p ** e - 1) // d


def _cap_for(n: int, m: int, q_e: int):
    return tuple([q_e * max(m - n, 1)] * (n + 1))


def psi_action(n: int, s: int, d: int, D: Poly, e: int) -> PLinearOp:
    """The D-twisted p^e-linear Frobenius on H^n(P^n, O(-s))."""
    F = D.field
    r = _check_cover_data(F, n, s, d, D, e)
    h_r = D.pow(r, cap=_cap_for(n, s, F.p ** e))
    return twisted_frobenius(F, n, s, h_r, e)


def cover_summand_action(n: int, s: int, d: int, D: Poly, e: int, j: int) -> PLinearOp:
    """Action on H^n(P^n, O(-sj)): multiply by (j (p^e-1)/d) D, then project."""
    F = D.field
    r = _check_cover_data(F, n, s, d, D, e)
    G = D.pow(j * r, cap=_cap_for(n, s * j, F.p ** e))
    return twisted_frobenius(F, n, s * j, G, e)


# ---------------------------------------------------------------------------
# trace of Frobenius and the Serre-dual action

def trace_on_monomial(p: int, e: int, a):
    """Tr_{F^e} on x^a (times the invariant volume form): (a+1)/p^e - 1 or None."""
    q = p ** e
    out = []
    for x in a:
        if x < 0:
            raise ValueError("exponents must be nonnegative")
        if (x + 1) % q:
            return None
        out.append((x + 1) // q - 1)
    return tuple(out)


def h0_basis(n: int, t: int) -> list:
    """Monomial basis of H^0(P^n, O(t))."""
    return monomials(n + 1, t) if t >= 0 else []


def dual_action(n: int, s: int, d: int, D: Poly, e: int) -> PLinearOp:
    """g -> Tr_{F^e}(g * D^{(p^e-1)/d}) on H^0(P^n, O(s-n-1)); p^{-e}-linear."""
    F = D.field
    p = F.p
    r = _check_cover_data(F, n, s, d, D, e)
    basis = h0_basis(n, s - n - 1)
    index = {b: i for i, b in enumerate(basis)}
    h_r = D.pow(r)
    dim = len(basis)
    B = [[0] * dim for _ in range(dim)]
    for col, b in enumerate(basis):
        prod = Poly.monomial(F, b).mul(h_r)
        for mono, c in prod.terms.items():
            t = trace_on_monomial(p, e, mono)
            if t is not None:
                row = index[t]
                B[row][col] = F.add(B[row][col], c)
    # (B v)^[p^-e] = B^[p^-e] v^[p^-e]
    M = [[F.frob(c, -e) for c in row] for row in B]
    return PLinearOp(F, basis, -e, M)


def residue_transpose_matches(psi: PLinearOp, dual: PLinearOp) -> bool:
    """psi matrix equals the transpose of the (untwisted) dual matrix under x^{-a} <-> x^{a-1}."""
    F = psi.field
    if psi.dim != dual.dim:
        return False
    pos = {b: i for i, b in enumerate(dual.basis)}
    perm = [pos.get(tuple(x - 1 for x in a)) for a in psi.basis]
    if any(i is None for i in perm):
        return False
    k = psi.e
    for i, a in enumerate(psi.basis):
        for j, b in enumerate(psi.basis):
            lhs = psi.matrix[i][j]
            rhs = F.frob(dual.matrix[perm[j]][perm[i]], k)
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# hypersurfaces

@dataclass
class HypersurfaceX:
    f: Poly
    smooth: Optional[bool] = None
    smoothness_check: str = "unverified"

    @property
    def dim(self) -> int:
        return self.f.nvars - 2

    @property
    def degree(self) -> int:
        return self.f.degree()

    @classmethod
    def from_poly(cls, f: Poly, check_smooth: bool = True) -> "HypersurfaceX":
        if not f or not f.is_homogeneous():
            raise InvariantViolation("hypersurface equation must be nonzero and homogeneous")
        if f.nvars < 3:
            raise ShapeMismatch("need at least 3 variables (a curve in P^2)")
        X = cls(f)
        if check_smooth and f.field.q ** (f.nvars - 1) <= 20000:
            X.smooth = not _has_singular_point(f)
            X.smoothness_check = f"Jacobian criterion over F_{f.field.q}"
        return X


def partial_derivative(f: Poly, i: int) -> Poly:
    F = f.field
    out = {}
    for e, c in f.terms.items():
        if e[i]:
            k = F.from_int(e[i])
            if k:
                new = list(e)
                new[i] -= 1
                out[tuple(new)] = F.add(out.get(tuple(new), 0), F.mul(c, k))
    return Poly(F, f.nvars, out)


def projective_points(field: FiniteField, nvars: int):
    """Normalised representatives (first nonzero coordinate = 1)."""
    for lead in range(nvars):
        for tail in itertools.product(range(field.q), repeat=nvars - lead - 1):
            yield (0,) * lead + (1,) + tail


def _has_singular_point(f: Poly) -> bool:
    grads = [partial_derivative(f, i) for i in range(f.nvars)]
    for P in projective_points(f.field, f.nvars):
        if f.evaluate(P) == 0 and all(g.evaluate(P) == 0 for g in grads):
            return True
    return False


def frobenius_on_structure_coh(X: HypersurfaceX, e: int = 1) -> PLinearOp:
    """Frobenius on H^n(X, O_X) = H^{n+1}(P^{n+1}, O(-deg))."""
    f = X.f
    F = f.field
    delta = X.degree
    N = f.nvars - 1
    q_e = F.p ** e
    G = f.pow(q_e - 1, cap=_cap_for(N, delta, q_e))
    return twisted_frobenius(F, N, delta, G, e)


def multinomial_coefficient(f: Poly, power: int, target) -> int:
    """Coefficient of x^target in f^power via multinomial enumeration."""
    F = f.field
    terms = [(e, c) for e, c in f.terms.items() if all(a <= b for a, b in zip(e, target))]
    target = tuple(target)
    fact = [1] * (power + 1)
    for i in range(1, power + 1):
        fact[i] = fact[i - 1] * i
    total = 0

    # variables still touched by terms[idx:]
    later = [set() for _ in range(len(terms) + 1)]
    for idx in range(len(terms) - 1, -1, -1):
        later[idx] = later[idx + 1] | {i for i, a in enumerate(terms[idx][0]) if a}

    def rec(idx, left, rem, acc_coeff, denom):
        nonlocal total
        if any(b and i not in later[idx] for i, b in enumerate(rem)):
            return
        if idx == len(terms):
            if left == 0:
                mult = F.from_int(fact[power] // denom)
                total = F.add(total, F.mul(mult, acc_coeff))
            return
        e, c = terms[idx]
        kmin, kmax = 0, left
        for i, (a, b) in enumerate(zip(e, rem)):
            if a:
                kmax = min(kmax, b // a)
                if i not in later[idx + 1]:
                    if b % a:
                        return
                    kmin = max(kmin, b // a)
        for k in range(kmin, kmax + 1):
            new_rem = tuple(b - k * a for a, b in zip(e, rem))
            rec(idx + 1, left - k, new_rem, F.mul(acc_coeff, F.pow(c, k)), denom * fact[k])

    rec(0, power, target, 1, 1)
    return total


def fsplit_coefficient(f: Poly, p: Optional[int] = None) -> int:
    """Coefficient of (x_0 ... x_N)^{p-1} in f^{p-1}."""
    if p is not None and p != f.field.p:
        raise ShapeMismatch("polynomial is defined over a field of different characteristic")
    if not f.is_homogeneous() or f.degree() != f.nvars:
        raise ShapeMismatch(
            f"F-split coefficient needs degree == number of variables (got {f.degree()} vs {f.nvars})"
        )
    p = f.field.p
    return multinomial_coefficient(f, p - 1, (p - 1,) * f.nvars)


def weierstrass_g(f: Poly) -> Poly:
    """g(x) with f = c*(y^2 z - z^3 g(x/z)) for a cubic in x0, x1, x2 = x, y, z."""
    F = f.field
    if f.nvars != 3 or f.degree() != 3:
        raise ShapeMismatch("expected a plane cubic in x0, x1, x2")
    c = f.coeff((0, 2, 1))
    if not c:
        raise ShapeMismatch("cubic is not in Weierstrass form (no y^2 z term)")
    inv = F.neg(F.inv(c))
    terms = {}
    for e, v in f.terms.items():
        if e == (0, 2, 1):
            continue
        if e[1] != 0:
            raise ShapeMismatch("cubic is not in Weierstrass form y^2 z = g(x, z)")
        terms[(e[0],)] = F.add(terms.get((e[0],), 0), F.mul(inv, v))
    return Poly(F, 1, terms)


def hasse_invariant(g: Poly) -> int:
    """Coefficient of x^{p-1} in g^{(p-1)/2}; g univariate or a Weierstrass cubic."""
    F = g.field
    if F.p == 2:
        raise ShapeMismatch("Hasse invariant via y^2 = g(x) needs p odd")
    if g.nvars != 1:
        g = weierstrass_g(g)
    p = F.p
    return g.pow((p - 1) // 2).coeff((p - 1,))


# ---------------------------------------------------------------------------
# special divisors

@dataclass
class SpecialDivisor:
    n: int
    s: int
    d: int
    e: int
    points: list
    h: Poly
    D: Poly
    gs: list
    sstab_dim: int = 0
    info: dict = field(default_factory=dict)


def default_points(field: FiniteField, n: int, l: int) -> list:
    pts = []
    for i in range(n + 1):
        pts.append(tuple(1 if k == i else 0 for k in range(n + 1)))
    for P in projective_points(field, n + 1):
        if P not in pts:
            pts.append(P)
    if l > len(pts):
        raise InvariantViolation(f"F_{field.q} has fewer than {l} points on P^{n}")
    return pts[:l]


def _chart(P):
    c = next(i for i, x in enumerate(P) if x)
    return c


def _local_expansion(F: FiniteField, mono, P, c):
    """Expansion of x^mono / x_c^deg around P in u_i = x_i/x_c - P_i/P_c (i != c)."""
    inv = F.inv(P[c])
    shifts = [F.mul(P[i], inv) for i in range(len(P))]
    others = [i for i in range(len(P)) if i != c]
    nv = len(others)
    result = Poly.constant(F, nv)
    for k, i in enumerate(others):
        lin = Poly(F, nv, {tuple(1 if t == k else 0 for t in range(nv)): 1,
                           (0,) * nv: shifts[i]})
        result = result * lin ** mono[i]
    return result


def local_conditions(h: Poly, P) -> tuple:
    """(h is in (u_1...u_n), coefficient of u_1...u_n) at the point P."""
    F = h.field
    c = _chart(P)
    total = Poly(F, h.nvars - 1)
    for mono, coef in h.terms.items():
        total = total + _local_expansion(F, mono, P, c).scale(coef)
    in_ideal = all(all(x >= 1 for x in e) for e in total.terms)
    unit = total.coeff((1,) * (h.nvars - 1))
    return in_ideal, unit


def smallest_e(p: int, d: int) -> int:
    if d % p == 0:
        raise InvariantViolation("p divides d")
    e = 1
    while (p ** e - 1) % d:
        e += 1
    return e


def special_divisor(field: FiniteField, n: int, s: int, d: int, points=None, l: Optional[int] = None,
                    e: Optional[int] = None, seed: int = 0) -> SpecialDivisor:
    """Construct h of degree s with h in I_j but not I_j*m at each point, and D = d*V(h)."""
    if points is None:
        if l is None:
            raise ShapeMismatch("give points or l")
        points = default_points(field, n, l)
    points = [tuple(field.from_int(x) if isinstance(x, int) and x < field.p else x for x in P) for P in points]
    l = len(points)
    if s < n + 1:
        raise InvariantViolation(f"s = {s} too small: H^0(O(s-n-1)) vanishes")
    e = smallest_e(field.p, d) if e is None else e

    # sections g_j of O(s-n-1) separating the points
    gbasis = h0_basis(n, s - n - 1)
    gs = []
    evals = [[Poly.monomial(field, b).evaluate(_normalise(field, P)) for b in gbasis] for P in points]
    for j in range(l):
        target = [1 if k == j else 0 for k in range(l)]
        x = linalg.solve(field, evals, target) if gbasis else None
        if x is None:
            raise InvariantViolation(f"s = {s} too small: no section of O(s-n-1) separates the points")
        gs.append(Poly(field, n + 1, {b: c for b, c in zip(gbasis, x) if c}))

    # h: linear conditions from each point
    hbasis = h0_basis(n, s)
    rows = []
    unit_rows = []
    for P in points:
        c = _chart(P)
        exps = [_local_expansion(field, b, P, c) for b in hbasis]
        keys = sorted({k for ex in exps for k in ex.terms})
        for k in keys:
            if not all(x >= 1 for x in k):
                rows.append([ex.coeff(k) for ex in exps])
        unit_rows.append([ex.coeff((1,) * n) for ex in exps])
    null = linalg.nullspace(field, rows, len(hbasis))
    if not null:
        raise InvariantViolation(f"s = {s} too small: no form vanishes as required")
    functionals = [[sum_mul(field, u, v) for v in null] for u in unit_rows]
    if any(not any(fn) for fn in functionals):
        raise InvariantViolation(f"s = {s} too small: cannot make the product of parameters appear")
    rng = random.Random(seed)
    choice = None
    candidates = [[1 if i == k else 0 for i in range(len(null))] for k in range(len(null))]
    candidates.append([1] * len(null))
    for _ in range(2000):
        candidates.append([field.random(rng) for _ in null])
    for coeffs in candidates:
        if all(sum_mul(field, fn, coeffs) for fn in functionals):
            choice = coeffs
            break
    if choice is None:
        raise InvariantViolation("no admissible combination found over this field")
    hvec = [field.sum(field.mul(c, v[i]) for c, v in zip(choice, null)) for i in range(len(hbasis))]
    h = Poly(field, n + 1, {b: c for b, c in zip(hbasis, hvec) if c})
    for P in points:
        ok, unit = local_conditions(h, P)
        if not ok or not unit:
            raise InvariantViolation("constructed form fails the local conditions")
    D = h ** d
    op = dual_action(n, s, d, D, e)
    dim = sstab_dim(op).dim
    if dim < l:
        raise InvariantViolation(f"stable image has dimension {dim} < {l}")
    return SpecialDivisor(n, s, d, e, points, h, D, gs, dim)


def sum_mul(F: FiniteField, a, b) -> int:
    return F.sum(F.mul(x, y) for x, y in zip(a, b) if x and y)


def _normalise(F: FiniteField, P):
    c = _chart(P)
    inv = F.inv(P[c])
    return tuple(F.mul(x, inv) for x in P)


def minimal_special_s(field: FiniteField, n: int, d: int, l: int, s_max: int = 30, **kw) -> SpecialDivisor:
    last = None
    for s in range(n + 1, s_max + 1):
        try:
            return special_divisor(field, n, s, d, l=l, **kw)
        except InvariantViolation as exc:
            last = exc
    raise InvariantViolation(f"no admissible s <= {s_max}: {last}")
