"""Cohomology H^1(X, W_j O_X) of plane curves via a two-chart Cech complex.

With U = {y != 0}, U' = {z != 0} covering X,
    H^1(X, W_j O) = W_j(A_{UU'}) / (W_j(A_U) + W_j(A_U')).
Witt vectors over the overlap ring are added and multiplied through
ghost components computed on lifts to Z/p^N.  Peeling the V-filtration
shows every class has a unique representative (g_0, ..., g_{j-1}) with
each g_i in the span H of the monomials lying in neither chart ring.

The W_j(F_p)-module structure comes from integer "digit" expansions in
the generators V^i[h_t] (h_t the monomial basis of H).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from . import diagonal as dg
from .chart import ChartRing, El
from .errors import InsufficientDepth, InvariantViolation, ShapeMismatch
from .fields import get_field
from .galois import GaloisRing, get_ring
from .poly import Poly
from .sigma_mod import (
    SemilinearMap,
    SigmaModule,
    ring_frobenius_module,
    span,
    sstab,
    verify_exactness,
)
from .witt import witt_from_int


# ---------------------------------------------------------------------------
# Witt vectors over the chart ring

class WittChart:
    """Witt vectors of length <= N over A = (chart ring) mod p.

    A vector is a list of El (reduced mod p, entries 0..p-1); None means 0.
    """

    def __init__(self, ring: ChartRing):
        self.A = ring
        self.p = ring.p

    def _powers(self, x: Optional[El], upto: int):
        """[x, x^p, x^(p^2), ...] on the canonical lift, mod p^N."""
        A = self.A
        out = []
        cur = x
        for k in range(upto + 1):
            out.append(cur)
            if k < upto and cur is not None and not cur.is_zero():
                cur = A.pow(cur, self.p)
        return out

    def ghosts(self, vec, length: int):
        A = self.A
        pw = [self._powers(c, length - 1 - i) if c is not None and not c.is_zero() else None
              for i, c in enumerate(vec[:length])]
        out = []
        for k in range(length):
            acc = A.zero()
            for i in range(k + 1):
                if i < len(pw) and pw[i] is not None:
                    acc = A.add(acc, A.scale(pw[i][k - i], self.p ** i))
            out.append(acc)
        return out

    def from_ghosts(self, ghosts, length: int):
        """Witt coordinates with the given ghost components mod p^(k+1)."""
        A = self.A
        p = self.p
        coords = []
        pw = []
        for k in range(length):
            acc = ghosts[k]
            for i in range(k):
                if pw[i] is not None:
                    acc = A.sub(acc, A.scale(pw[i][k - i], p ** i))
            acc = A.reduce_mod(acc, p ** (k + 1))
            s = A.reduce_mod(A.divide_p(acc, k), p)
            coords.append(None if s.is_zero() else s)
            pw.append(self._powers(coords[-1], length - 1 - k) if coords[-1] is not None else None)
        return coords

    def combine(self, op, x, y, length: int):
        gx = self.ghosts(x, length)
        gy = self.ghosts(y, length)
        A = self.A
        fn = {"add": A.add, "sub": A.sub, "mul": A.mul}[op]
        return self.from_ghosts([fn(a, b) for a, b in zip(gx, gy)], length)

    def add(self, x, y, length):
        return self.combine("add", x, y, length)

    def sub(self, x, y, length):
        return self.combine("sub", x, y, length)

    def mul(self, x, y, length):
        return self.combine("mul", x, y, length)

    def const(self, k: int, length: int):
        digits = witt_from_int(k, get_field(self.p, 1), length).coords
        return [self.A.const(c) if c else None for c in digits]

    def teich(self, a: El, shift: int, length: int):
        """V^shift [a]."""
        vec = [None] * length
        if shift < length:
            vec[shift] = a
        return vec

    def frobenius(self, x):
        A = self.A
        return [None if c is None else A.reduce_mod(A.pow(c, self.p, A.p), A.p) for c in x]

    @staticmethod
    def is_zero(x) -> bool:
        return all(c is None or c.is_zero() for c in x)


# ---------------------------------------------------------------------------
# the curve and its classes

def _arrange(f: Poly) -> tuple:
    """Reorder (and if needed linearly change) coordinates so x0^deg has a unit coefficient."""
    F = f.field
    d = f.degree()
    for k in range(3):
        if f.coeff(tuple(d if i == k else 0 for i in range(3))):
            others = [i for i in range(3) if i != k]
            order = (k, others[0], others[1])
            g = Poly(F, 3, {tuple(e[i] for i in order): c for e, c in f.terms.items()})
            return g, {"permutation": list(order), "shear": None}
    # a point [1:a:b] off the curve lets x0 -> x0, x1 -> x1 + a x0, x2 -> x2 + b x0 work
    for a, b in itertools.product(range(F.p), repeat=2):
        if f.evaluate((1, a, b)):
            X = [Poly.monomial(F, (1, 0, 0)),
                 Poly(F, 3, {(0, 1, 0): 1, (1, 0, 0): a}),
                 Poly(F, 3, {(0, 0, 1): 1, (1, 0, 0): b})]
            g = f.substitute_linear(X)
            return g, {"permutation": [0, 1, 2], "shear": [a, b]}
    raise InvariantViolation("curve contains every F_p-point of a chart; no admissible coordinates")


class CurveCech:
    """Cech data for a plane curve over F_p up to Witt length N."""

    def __init__(self, f: Poly, N: int, window: int = 64):
        if f.field.m != 1:
            raise InvariantViolation("Witt towers are implemented over prime fields only")
        if not f or not f.is_homogeneous() or f.nvars != 3:
            raise InvariantViolation("expected a nonzero homogeneous equation in x0, x1, x2")
        self.original = f
        self.f, self.coords = _arrange(f)
        self.p = f.field.p
        self.N = N
        self.ring = ChartRing(self.f, N, window=window)
        self.W = WittChart(self.ring)
        self.hbasis = self.ring.h_basis()
        self.hindex = {m: i for i, m in enumerate(self.hbasis)}
        self.genus = len(self.hbasis)
        d = self.f.degree()
        if self.genus != (d - 1) * (d - 2) // 2:
            raise InvariantViolation("H^1(O) dimension does not match the arithmetic genus")

    # H-span vectors <-> ring elements

    def h_element(self, coeffs) -> Optional[El]:
        terms = {m: c for m, c in zip(self.hbasis, coeffs) if c}
        return self.ring.from_terms(terms) if terms else None

    def h_coeffs(self, x: El) -> list:
        out = [0] * self.genus
        for m, c in self.ring.terms(x).items():
            out[self.hindex[m]] = c % self.p
        return out

    # classes: tuple of j coefficient rows

    def canon(self, vec, length: int) -> tuple:
        """Canonical representative of the class of a Witt vector over the overlap."""
        W = self.W
        vec = list(vec[:length]) + [None] * (length - len(vec))
        rows = []
        for i in range(length):
            c = vec[i]
            if c is None or c.is_zero():
                rows.append((0,) * self.genus)
                continue
            alpha, beta, gamma = self.ring.split(c)
            for part in (alpha, beta, gamma):
                if not part.is_zero():
                    vec = W.sub(vec, W.teich(part, i, length), length)
            rows.append(tuple(self.h_coeffs(gamma)) if not gamma.is_zero() else (0,) * self.genus)
        return tuple(rows)

    def vector(self, cls) -> list:
        return [self.h_element(row) for row in cls]

    def zero_class(self, length: int) -> tuple:
        return tuple((0,) * self.genus for _ in range(length))

    def add(self, c1, c2) -> tuple:
        n = len(c1)
        return self.canon(self.W.add(self.vector(c1), self.vector(c2), n), n)

    def sub(self, c1, c2) -> tuple:
        n = len(c1)
        return self.canon(self.W.sub(self.vector(c1), self.vector(c2), n), n)

    def int_mul(self, k: int, c) -> tuple:
        n = len(c)
        return self.canon(self.W.mul(self.W.const(k, n), self.vector(c), n), n)

    def frobenius(self, c) -> tuple:
        return self.canon(self.W.frobenius(self.vector(c)), len(c))

    def generator(self, i: int, t: int, length: int) -> tuple:
        """V^i [h_t]."""
        rows = [[0] * self.genus for _ in range(length)]
        rows[i][t] = 1
        return tuple(tuple(r) for r in rows)

    def is_zero(self, c) -> bool:
        return not any(any(r) for r in c)

    def digits(self, c) -> list:
        """Integers n_(i,t) in 0..p-1 with c = sum n_(i,t) V^i[h_t]."""
        n = len(c)
        g = self.genus
        out = [0] * (n * g)
        cur = c
        for i in range(n):
            row = cur[i]
            if not any(row):
                continue
            total = None
            for t, k in enumerate(row):
                if k:
                    out[i * g + t] = k
                    term = self.W.mul(self.W.const(k, n), self.vector(self.generator(i, t, n)), n)
                    total = term if total is None else self.W.add(total, term, n)
            cur = self.canon(self.W.sub(self.vector(cur), total, n), n)
            if any(cur[i]):
                raise InvariantViolation("digit expansion failed to clear a layer")
        return out


def curve_cech_setup(f: Poly, N: int = 1, window: int = 64) -> CurveCech:
    return CurveCech(f, N, window=window)


# ---------------------------------------------------------------------------
# levels and the tower

@dataclass
class Level:
    j: int
    module: SigmaModule
    keep: list              # indices of the diagonal basis that survive
    Vm: list                # old coords (row) * Vm = diagonal coords
    Vinv: list
    p_digits: list
    F_digits: list

    def to_new(self, R: GaloisRing, x_old):
        y = [R.zero] * len(self.keep)
        for s, k in enumerate(self.keep):
            acc = R.zero
            for l, xl in enumerate(x_old):
                if xl:
                    acc = R.add(acc, R.mul(R.from_int(xl), self.Vm[l][k]))
            y[s] = acc
        return self.module.reduce(y)

    def to_old(self, R: GaloisRing, y):
        """Integer combination of the generators representing y."""
        n = len(self.Vm)
        x = [R.zero] * n
        for s, k in enumerate(self.keep):
            if any(y[s]):
                for l in range(n):
                    x[l] = R.add(x[l], R.mul(y[s], self.Vinv[k][l]))
        return [a[0] for a in x]


def _old_matrix_to_map(R, src: Level, tgt: Level, Phi, index: int) -> SemilinearMap:
    """Row-convention integer matrix on old coordinates -> SemilinearMap on diagonal coordinates."""
    cols = []
    for k in src.keep:
        row = [R.zero] * len(Phi[0]) if Phi else []
        for l, v in enumerate(src.Vinv[k]):
            if any(v):
                for m, phi in enumerate(Phi[l]):
                    if phi:
                        row[m] = R.add(row[m], R.mul(v, R.from_int(phi)))
        cols.append(tgt.to_new(R, [a[0] for a in row]))
    A = [[cols[c][s] for c in range(len(src.keep))] for s in range(len(tgt.keep))]
    return SemilinearMap(src.module, tgt.module, index, A)


def build_level(C: CurveCech, R: GaloisRing, j: int) -> Level:
    g = C.genus
    n = j * g
    p = C.p
    gens = [C.generator(i, t, j) for i in range(j) for t in range(g)]
    # p * V^i[h] = V^{i+1}[h^p] in characteristic p (p = VFR)
    p_dig = []
    F_dig = []
    for b in gens:
        pb = C.int_mul(p, b)
        p_dig.append(C.digits(pb))
        F_dig.append(C.digits(C.frobenius(b)))
    rel = []
    for l in range(n):
        row = [R.from_int(-x) for x in p_dig[l]]
        row[l] = R.add(row[l], R.from_int(p))
        rel.append(row)
    for l in range(n):
        rel.append([R.from_int(p ** j) if m == l else R.zero for m in range(n)])
    form = dg.diagonal_form(R, rel)
    keep = [k for k, e in enumerate(form.exps) if e > 0]
    profile = [min(form.exps[k], j) for k in keep]
    Vm = form.V
    Vinv = dg.inverse(R, Vm)
    # F in diagonal coordinates, column k = new coords of F(basis_k)
    Fcols = []
    for k in keep:
        acc = [R.zero] * n
        for l, v in enumerate(Vinv[k]):
            if any(v):
                for m, dgt in enumerate(F_dig[l]):
                    if dgt:
                        acc[m] = R.add(acc[m], R.mul(v, R.from_int(dgt)))
        Fcols.append(acc)
    level = Level(j, None, keep, Vm, Vinv, p_dig, F_dig)
    tmp = SigmaModule(R, profile, None)
    level.module = tmp
    cols = [level.to_new(R, [a[0] for a in acc]) for acc in Fcols]
    Fm = [[cols[c][s] for c in range(len(keep))] for s in range(len(keep))]
    level.module = SigmaModule(R, profile, Fm)
    return level


@dataclass
class WittCohTower:
    curve: str
    p: int
    J: int
    genus: int
    cech: CurveCech
    ring: GaloisRing
    levels: list
    R_maps: dict = field(default_factory=dict)      # j -> level j -> level j-1
    V_maps: dict = field(default_factory=dict)      # j -> level 1 -> level j (V^{j-1})
    exactness: dict = field(default_factory=dict)

    def level(self, j: int) -> Level:
        return self.levels[j - 1]

    @property
    def lengths(self) -> list:
        return [L.module.length for L in self.levels]

    @property
    def sstab_lengths(self) -> list:
        return [sstab(L.module).length for L in self.levels]

    def growth(self) -> list:
        s = self.sstab_lengths
        return [{"j": j + 1, "increment": s[j] - (s[j - 1] if j else 0), "bound_ok": s[j] >= j + 1}
                for j in range(len(s))]

    def to_json(self) -> dict:
        ss = self.sstab_lengths
        return {
            "curve": self.curve,
            "p": self.p,
            "genus": self.genus,
            "levels": [{"j": L.j, "length": L.module.length, "sstab_length": ss[k],
                        "profile": list(L.module.profile)}
                       for k, L in enumerate(self.levels)],
            "exactness": {str(j): r.to_json() for j, r in sorted(self.exactness.items())},
        }


def witt_tower(f: Poly, J: int = 3, window: int = 64) -> WittCohTower:
    if J < 1:
        raise ShapeMismatch("J must be >= 1")
    C = CurveCech(f, J, window=window)
    R = get_ring(get_field(C.p, 1), J)
    levels = [build_level(C, R, j) for j in range(1, J + 1)]
    tower = WittCohTower(str(f), C.p, J, C.genus, C, R, levels)
    g = C.genus
    for j in range(2, J + 1):
        src, tgt = levels[j - 1], levels[j - 2]
        # truncation sends V^i[h_t] to itself for i < j-1 and kills the top layer
        Phi = [[1 if (l < (j - 1) * g and m == l) else 0 for m in range((j - 1) * g)] for l in range(j * g)]
        tower.R_maps[j] = _old_matrix_to_map(R, src, tgt, Phi, 0)
        Psi = [[1 if m == (j - 1) * g + l else 0 for m in range(j * g)] for l in range(g)]
        tower.V_maps[j] = _old_matrix_to_map(R, levels[0], src, Psi, -1)
        tower.exactness[j] = verify_exactness([tower.V_maps[j], tower.R_maps[j]], right_zero=True)
    return tower


# ---------------------------------------------------------------------------
# Bockstein on constants

def bockstein_class(C: CurveCech, c: int, i: int, t: int) -> tuple:
    """Connecting map of 0 -> W_t -V^i-> W_{t+i} -> W_i -> 0 on the constant c in H^0(W_i).

    Lift c to W_{t+i} on each chart (zero padding), take the Cech difference and
    read off the V^i-part as a class in H^1(W_t)."""
    W = C.W
    n = t + i
    lift_y = W.const(c, i) + [None] * t
    lift_z = W.const(c, i) + [None] * t
    diff = W.sub(lift_y, lift_z, n)
    if any(d is not None and not d.is_zero() for d in diff[:i]):
        raise InvariantViolation("Cech difference is not in the image of V^i")
    return C.canon(diff[i:], t)


def bockstein(tower: WittCohTower, j: int, i: int = 1) -> SemilinearMap:
    """B: H^0(X, W_i O) -> H^1(X, W_j O) with H^0 = constants W_i(F_p)."""
    C = tower.cech
    R = tower.ring
    src = ring_frobenius_module(R, i)
    tgt = tower.level(j)
    cls = bockstein_class(C, 1, i, j)
    col = tgt.to_new(R, C.digits(cls))
    A = [[col[s]] for s in range(len(tgt.keep))]
    return SemilinearMap(src, tgt.module, 0, A)


# ---------------------------------------------------------------------------
# witnesses

@dataclass
class Witness:
    i: int
    found: bool
    j: Optional[int] = None
    element: Optional[list] = None
    mode: str = "direct"
    reason: str = ""

    def to_json(self) -> dict:
        return {"i": self.i, "j_i": self.j, "found": self.found, "mode": self.mode,
                "element": self.element, "reason": self.reason}


def p_power_class(tower: WittCohTower, j: int, y, i: int) -> tuple:
    """p^i * y computed by Witt multiplication on a class representative."""
    C = tower.cech
    cls = _class_of(tower, j, y)
    return C.int_mul(tower.p ** i, cls) if i else cls


def _class_of(tower: WittCohTower, j: int, y) -> tuple:
    C = tower.cech
    L = tower.level(j)
    x = L.to_old(tower.ring, y)
    cls = C.zero_class(j)
    for l, k in enumerate(x):
        if k:
            i, t = divmod(l, C.genus)
            cls = C.add(cls, C.int_mul(k, C.generator(i, t, j)))
    return cls


def _sub_elements(sub):
    """All elements of a sub-object (small modules only)."""
    R = sub.ambient.ring
    M = sub.ambient
    ranges = [range(R.p ** e) for e in sub.profile]
    for combo in itertools.product(*ranges):
        x = M.zero()
        for c, b in zip(combo, sub.basis):
            if c:
                x = M.add(x, M.smul(R.from_int(c), b))
        yield x


def _direct_witness(tower: WittCohTower, i: int) -> Witness:
    R = tower.ring
    for j in range(1, tower.J + 1):
        M = tower.level(j).module
        S = sstab(M)
        for b in S.basis:
            if not M.is_zero(M.smul(R.from_int(tower.p ** i), b)):
                if tower.cech.is_zero(p_power_class(tower, j, b, i)):
                    raise InvariantViolation("module structure disagrees with Witt arithmetic")
                return Witness(i, True, j, [R.format(a) for a in b], "direct")
    if all(sstab(L.module).length == 0 for L in tower.levels):
        return Witness(i, False, mode="direct", reason="none: semistable parts vanish")
    raise InsufficientDepth(f"no element with p^{i} x != 0 in the semistable parts up to J = {tower.J}")


def _proof_witness(tower: WittCohTower, i_target: int) -> Witness:
    R = tower.ring
    S1 = sstab(tower.level(1).module)
    if S1.length == 0:
        return Witness(i_target, False, mode="proof", reason="none: H^1(O)^sstab = 0")
    x = S1.basis[0]
    j_prev = 1
    for i in range(1, i_target + 1):
        chosen = None
        for t in range(j_prev + 1, tower.J - i + 1):
            Mt = tower.level(t).module
            St = sstab(Mt)
            alpha = _r_power(tower, t, j_prev)
            Z = [z for z in _sub_elements(St) if tower.level(j_prev).module.is_zero(alpha(z))]
            Bcls = bockstein_class(tower.cech, 1, i, t)
            bvec = tower.level(t).to_new(R, tower.cech.digits(Bcls))
            Msub = span(Mt, [bvec])
            if any(not Msub.contains(z) for z in Z):
                chosen = (t, St, alpha, Msub)
                break
        if chosen is None:
            raise InsufficientDepth(f"step {i}: no admissible t with t + {i} <= J = {tower.J}")
        t, St, alpha, Msub = chosen
        target_prev = tower.level(j_prev).module
        pre = [z for z in _sub_elements(St)
               if target_prev.is_zero(target_prev.sub(alpha(z), x)) and not Msub.contains(z)]
        if not pre:
            raise InvariantViolation("preimage lies inside the Bockstein image")
        zp = pre[0]
        j_i = t + i
        Sj = sstab(tower.level(j_i).module)
        back = _r_power(tower, j_i, t)
        lifts = [w for w in _sub_elements(Sj) if tower.level(t).module.is_zero(
            tower.level(t).module.sub(back(w), zp))]
        if not lifts:
            raise InvariantViolation("R on semistable parts is not surjective")
        x = lifts[0]
        j_prev = j_i
        Mj = tower.level(j_i).module
        if Mj.is_zero(Mj.smul(R.from_int(tower.p ** i), x)):
            raise InvariantViolation(f"p^{i} x vanishes at step {i}")
    return Witness(i_target, True, j_prev, [R.format(a) for a in x], "proof")


def _r_power(tower: WittCohTower, j_from: int, j_to: int):
    maps = [tower.R_maps[j] for j in range(j_from, j_to, -1)]

    def apply(z):
        for m in maps:
            z = m.apply(z)
        return z
    return apply


def nonvanishing_witness(tower: WittCohTower, i: int, mode: str = "direct") -> Witness:
    """An element x of some H^1(W_j O)^sstab, j <= J, with p^i x != 0."""
    if i < 0:
        raise ShapeMismatch("i must be nonnegative")
    if i == 0:
        S = sstab(tower.level(1).module)
        if S.length == 0:
            return Witness(0, False, mode=mode, reason="none: H^1(O)^sstab = 0")
        return Witness(0, True, 1, [tower.ring.format(a) for a in S.basis[0]], mode)
    if mode == "direct":
        return _direct_witness(tower, i)
    if mode == "proof":
        return _proof_witness(tower, i)
    raise ShapeMismatch(f"unknown witness mode {mode!r}")
