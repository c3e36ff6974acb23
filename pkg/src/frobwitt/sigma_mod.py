"""Finite-length W_n(F_q)-modules with a sigma-semilinear Frobenius.

A module is stored by its elementary-divisor profile (j_1, ..., j_r):
M = (+)_t W_n / p^{j_t}, elements are r-tuples of Galois-ring values
with coordinate t taken modulo p^{j_t}.  The structure map is
x -> A_F * sigma(x).  A generalized homomorphism of index i is
x -> A * sigma^i(x).

Sub-objects are computed by embedding M into the free module W_n^r via
x_t -> p^{n - j_t} x_t and taking a diagonal form there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import diagonal as dg
from .errors import InvariantViolation, ShapeMismatch
from .fields import FiniteField
from .galois import GaloisRing, get_ring


class SigmaModule:
    """(M, F) with M of finite length over W_n(F_q)."""

    def __init__(self, ring: GaloisRing, profile: Sequence[int], F=None):
        profile = tuple(int(j) for j in profile)
        for j in profile:
            if not 1 <= j <= ring.n:
                raise InvariantViolation(f"profile entry {j} outside 1..{ring.n}")
        r = len(profile)
        if F is None:
            F = dg.zeros(ring, r, r)
        if len(F) != r or any(len(row) != r for row in F):
            raise ShapeMismatch("Frobenius matrix has wrong shape")
        self.ring = ring
        self.profile = profile
        F = [[ring.reduce_mod_pk(a, profile[s]) for a in row] for s, row in enumerate(F)]
        _check_well_defined(ring, F, profile, profile, "Frobenius")
        self.F = F

    @property
    def rank(self) -> int:
        return len(self.profile)

    @property
    def length(self) -> int:
        return sum(self.profile)

    def __repr__(self):
        return f"SigmaModule(W_{self.ring.n}(F_{self.ring.field.q}), profile={list(self.profile)})"

    def __eq__(self, other):
        return (
            isinstance(other, SigmaModule)
            and self.ring == other.ring
            and self.profile == other.profile
            and self.F == other.F
        )

    def __hash__(self):
        return hash((self.ring, self.profile))

    # elements

    def reduce(self, x):
        R = self.ring
        return [R.reduce_mod_pk(a, j) for a, j in zip(x, self.profile)]

    def zero(self):
        return [self.ring.zero] * self.rank

    def is_zero(self, x) -> bool:
        return not any(any(a) for a in self.reduce(x))

    def basis(self):
        R = self.ring
        return [[R.one if i == k else R.zero for i in range(self.rank)] for k in range(self.rank)]

    def add(self, x, y):
        return self.reduce([self.ring.add(a, b) for a, b in zip(x, y)])

    def sub(self, x, y):
        return self.reduce([self.ring.sub(a, b) for a, b in zip(x, y)])

    def smul(self, r, x):
        return self.reduce([self.ring.mul(r, a) for a in x])

    def sigma_vec(self, x, k: int):
        return [self.ring.sigma(a, k) for a in x]

    def apply_F(self, x, times: int = 1):
        for _ in range(times):
            x = self.reduce(dg.matvec(self.ring, self.F, self.sigma_vec(x, 1)))
        return x

    def random_element(self, rng: random.Random):
        return self.reduce([self.ring.random(rng) for _ in range(self.rank)])

    def elements(self):
        """Every element; only sensible for tiny modules."""
        import itertools
        R = self.ring
        ranges = []
        for j in self.profile:
            pj = R.p ** j
            ranges.append([tuple(c) for c in itertools.product(range(pj), repeat=R.m)])
        for combo in itertools.product(*ranges):
            yield list(combo)

    # free-module embedding

    def embed(self, x):
        R = self.ring
        return [R.scale(a, R.p ** (R.n - j)) for a, j in zip(x, self.profile)]

    def unembed(self, w):
        R = self.ring
        return self.reduce([R.divp(a, R.n - j) for a, j in zip(w, self.profile)])

    # serialization

    def to_json(self) -> dict:
        R = self.ring
        return {
            "base": R.field.spec,
            "n": R.n,
            "profile": list(self.profile),
            "F": [[R.format(a) for a in row] for row in self.F],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SigmaModule":
        field_ = FiniteField.from_spec(data["base"])
        R = get_ring(field_, int(data["n"]))
        F = [[R.parse(a) for a in row] for row in data.get("F", [])] or None
        return cls(R, data["profile"], F)


def _check_well_defined(R, A, src_profile, tgt_profile, what):
    for s, row in enumerate(A):
        for t, a in enumerate(row):
            need = tgt_profile[s] - src_profile[t]
            if need > 0 and any(a) and R.valuation(a) < need:
                raise InvariantViolation(
                    f"{what} matrix entry ({s},{t}) not divisible by p^{need}"
                )


def ring_frobenius_module(R: GaloisRing, j: Optional[int] = None) -> SigmaModule:
    """W_j(F_q) as a module over W_n(F_q) with F = sigma."""
    j = R.n if j is None else j
    return SigmaModule(R, (j,), [[R.one]])


# ---------------------------------------------------------------------------

class SemilinearMap:
    """x -> A * sigma^index(x), commuting with the structure maps."""

    def __init__(self, source: SigmaModule, target: SigmaModule, index: int, matrix, check: bool = True):
        if source.ring != target.ring:
            raise ShapeMismatch("modules over different base rings")
        R = source.ring
        if len(matrix) != target.rank or any(len(row) != source.rank for row in matrix):
            raise ShapeMismatch("map matrix has wrong shape")
        self.source = source
        self.target = target
        self.index = int(index)
        self.matrix = [[R.reduce_mod_pk(a, target.profile[s]) for a in row] for s, row in enumerate(matrix)]
        if check:
            _check_well_defined(R, self.matrix, source.profile, target.profile, "map")
            self._check_commutes()

    @property
    def ring(self):
        return self.source.ring

    def _check_commutes(self):
        R = self.ring
        A = self.matrix
        left = dg.matmul(R, A, dg.mat_sigma(R, self.source.F, self.index))
        right = dg.matmul(R, self.target.F, dg.mat_sigma(R, A, 1))
        for s, (lr, rr) in enumerate(zip(left, right)):
            for a, b in zip(lr, rr):
                if any(R.reduce_mod_pk(R.sub(a, b), self.target.profile[s])):
                    raise InvariantViolation("map does not commute with F")

    def apply(self, x):
        R = self.ring
        y = dg.matvec(R, self.matrix, [R.sigma(a, self.index) for a in x])
        return self.target.reduce(y)

    def __call__(self, x):
        return self.apply(x)

    def compose(self, other: "SemilinearMap") -> "SemilinearMap":
        """other o self (apply self first)."""
        if other.source != self.target:
            raise ShapeMismatch("maps are not composable")
        R = self.ring
        M = dg.matmul(R, other.matrix, dg.mat_sigma(R, self.matrix, other.index))
        return SemilinearMap(self.source, other.target, self.index + other.index, M, check=False)

    def __add__(self, other: "SemilinearMap") -> "SemilinearMap":
        if self.index != other.index:
            raise ShapeMismatch("cannot add generalized homomorphisms of different indices")
        if self.source != other.source or self.target != other.target:
            raise ShapeMismatch("maps between different modules")
        R = self.ring
        M = [[R.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.matrix, other.matrix)]
        return SemilinearMap(self.source, self.target, self.index, M, check=False)

    def is_zero(self) -> bool:
        return all(self.target.is_zero(self.apply(b)) for b in self.source.basis())

    def to_json(self) -> dict:
        R = self.ring
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "index": self.index,
            "matrix": [[R.format(a) for a in row] for row in self.matrix],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SemilinearMap":
        src = SigmaModule.from_json(data["source"])
        tgt = SigmaModule.from_json(data["target"])
        R = src.ring
        A = [[R.parse(a) for a in row] for row in data["matrix"]]
        return cls(src, tgt, data.get("index", 0), A)


def identity_map(M: SigmaModule) -> SemilinearMap:
    return SemilinearMap(M, M, 0, dg.identity(M.ring, M.rank))


def frobenius_map(M: SigmaModule) -> SemilinearMap:
    return SemilinearMap(M, M, 1, M.F)


def zero_map(M: SigmaModule, N: SigmaModule, index: int = 0) -> SemilinearMap:
    return SemilinearMap(M, N, index, dg.zeros(M.ring, N.rank, M.rank))


# ---------------------------------------------------------------------------
# sub-objects and quotients

@dataclass
class Subobject:
    """A sub-module S of `ambient`, with S itself as a SigmaModule (when F-stable)."""

    ambient: SigmaModule
    profile: tuple
    basis: list            # ambient vectors, one per generator of S
    U: list                # diagonal-form row transform in embedded coordinates
    exps: list
    module: Optional[SigmaModule] = None

    @property
    def length(self) -> int:
        return sum(self.profile)

    def include(self, y):
        M = self.ambient
        R = M.ring
        acc = M.zero()
        for c, b in zip(y, self.basis):
            if any(c):
                acc = [R.add(a, R.mul(c, x)) for a, x in zip(acc, b)]
        return M.reduce(acc)

    def coords(self, x):
        """Coordinates of x in S; raises InvariantViolation if x is not in S."""
        y = self._coords(x)
        if y is None:
            raise InvariantViolation("element not in submodule")
        return y

    def contains(self, x) -> bool:
        return self._coords(x) is not None

    def _coords(self, x):
        M = self.ambient
        R = M.ring
        w = M.embed(M.reduce(x))
        u = dg.matvec(R, self.U, w)
        y = []
        for k, uk in enumerate(u):
            if k < len(self.profile):
                e = R.n - self.profile[k]
                if R.valuation(uk) < e:
                    return None
                y.append(R.reduce_mod_pk(R.divp(uk, e), self.profile[k]))
            elif any(uk):
                return None
        return y

    def contained_in(self, other: "Subobject") -> bool:
        return all(other.contains(b) for b in self.basis)

    def inclusion(self) -> SemilinearMap:
        if self.module is None:
            raise InvariantViolation("sub-object is not F-stable")
        A = dg.transpose(self.basis, self.ambient.rank) if self.basis else dg.zeros(self.ambient.ring, self.ambient.rank, 0)
        return SemilinearMap(self.module, self.ambient, 0, A)


def span(M: SigmaModule, gens, with_frobenius: bool = True) -> Subobject:
    """Sub-module of M generated by the vectors `gens`."""
    R = M.ring
    r = M.rank
    gens = [M.reduce(g) for g in gens]
    cols = [M.embed(g) for g in gens]
    G = [[cols[c][t] for c in range(len(cols))] for t in range(r)]
    form = dg.diagonal_form(R, G, r, len(cols))
    Uinv = dg.inverse(R, form.U) if r else []
    profile, basis = [], []
    for k, e in enumerate(form.exps):
        if e >= R.n:
            break
        col = [R.scale(Uinv[t][k], R.p ** e) for t in range(r)]
        profile.append(R.n - e)
        basis.append(M.unembed(col))
    sub = Subobject(M, tuple(profile), basis, form.U, list(form.exps))
    if with_frobenius:
        _attach_frobenius(sub)
    return sub


def _attach_frobenius(sub: Subobject):
    M = sub.ambient
    R = M.ring
    cols = []
    for b in sub.basis:
        fb = M.apply_F(b)
        y = sub._coords(fb)
        if y is None:
            raise InvariantViolation("sub-module is not F-stable")
        cols.append(y)
    k = len(sub.basis)
    A = [[cols[c][s] for c in range(k)] for s in range(k)]
    sub.module = SigmaModule(R, sub.profile, A)


def zero_subobject(M: SigmaModule) -> Subobject:
    return span(M, [])


def whole(M: SigmaModule) -> Subobject:
    return span(M, M.basis())


@dataclass
class Quotient:
    ambient: SigmaModule
    module: SigmaModule
    U: list
    Uinv: list
    kept: list

    def project(self, x):
        R = self.ambient.ring
        u = dg.matvec(R, self.U, self.ambient.reduce(x))
        return self.module.reduce([u[k] for k in self.kept])

    def lift(self, y):
        R = self.ambient.ring
        full = [R.zero] * self.ambient.rank
        for k, c in zip(self.kept, y):
            full[k] = c
        return self.ambient.reduce(dg.matvec(R, self.Uinv, full))

    def projection(self) -> SemilinearMap:
        A = [[self.U[k][t] for t in range(self.ambient.rank)] for k in self.kept]
        return SemilinearMap(self.ambient, self.module, 0, A)


def quotient(N: SigmaModule, sub: Subobject) -> Quotient:
    R = N.ring
    s = N.rank
    gens = list(sub.basis)
    C = [[g[t] for g in gens] + [R.from_int(R.p ** N.profile[t]) if t == c else R.zero for c in range(s)]
         for t in range(s)]
    form = dg.diagonal_form(R, C, s, len(gens) + s)
    U = form.U
    Uinv = dg.inverse(R, U) if s else []
    kept = [k for k, e in enumerate(form.exps[:s]) if e > 0]
    profile = [min(form.exps[k], R.n) for k in kept]
    AF = dg.matmul(R, dg.matmul(R, U, N.F), dg.mat_sigma(R, Uinv, 1)) if s else []
    F = [[AF[a][b] for b in kept] for a in kept]
    return Quotient(N, SigmaModule(R, profile, F), U, Uinv, kept)


# ---------------------------------------------------------------------------
# kernel / image / cokernel

def length(M) -> int:
    if isinstance(M, SigmaModule):
        return M.length
    return sum(M.profile)


def image(alpha: SemilinearMap) -> Subobject:
    N = alpha.target
    cols = [[alpha.matrix[s][t] for s in range(N.rank)] for t in range(alpha.source.rank)]
    return span(N, cols)


def kernel(alpha: SemilinearMap) -> Subobject:
    M, N = alpha.source, alpha.target
    R = M.ring
    r, s = M.rank, N.rank
    B = [[R.scale(a, R.p ** (R.n - N.profile[i])) for a in row] for i, row in enumerate(alpha.matrix)]
    form = dg.diagonal_form(R, B, s, r)
    gens = []
    for k in range(r):
        col = [form.V[t][k] for t in range(r)]
        e = form.exps[k] if k < len(form.exps) else R.n
        if e >= R.n:
            gens.append(col)
        elif e > 0:
            gens.append([R.scale(a, R.p ** (R.n - e)) for a in col])
    gens = [[R.sigma(a, -alpha.index) for a in g] for g in gens]
    return span(M, gens)


@dataclass
class HomParts:
    kernel: Subobject
    image: Subobject
    cokernel: Quotient


def hom_parts(alpha: SemilinearMap) -> HomParts:
    im = image(alpha)
    return HomParts(kernel(alpha), im, quotient(alpha.target, im))


# ---------------------------------------------------------------------------
# semistable part

def frobenius_power_matrix(M: SigmaModule, e: int):
    R = M.ring
    A = dg.identity(R, M.rank)
    for _ in range(e):
        A = dg.matmul(R, M.F, dg.mat_sigma(R, A, 1))
    return A


def sstab(M: SigmaModule) -> Subobject:
    """F^e(M) for e large; stops when two consecutive images have equal length."""
    R = M.ring
    A = M.F
    prev = whole(M)
    for _ in range(M.length + 1):
        cols = [[A[s][t] for s in range(M.rank)] for t in range(M.rank)]
        cur = span(M, cols)
        if cur.length == prev.length:
            return cur
        prev = cur
        A = dg.matmul(R, M.F, dg.mat_sigma(R, A, 1))
    raise AssertionError("image chain failed to stabilize")  # unreachable: lengths strictly drop


def frobenius_is_bijective(M: SigmaModule) -> bool:
    f = frobenius_map(M)
    return kernel(f).length == 0 and image(f).length == M.length


def induced_sstab_hom(alpha: SemilinearMap, src: Optional[Subobject] = None,
                      tgt: Optional[Subobject] = None) -> SemilinearMap:
    src = sstab(alpha.source) if src is None else src
    tgt = sstab(alpha.target) if tgt is None else tgt
    cols = [tgt.coords(alpha.apply(b)) for b in src.basis]
    k = len(src.basis)
    A = [[cols[c][s] for c in range(k)] for s in range(len(tgt.basis))]
    return SemilinearMap(src.module, tgt.module, alpha.index, A)


# ---------------------------------------------------------------------------
# exactness

@dataclass
class ExactnessReport:
    exact: bool
    exact_sstab: bool
    lengths: list
    sstab_lengths: list
    joints: list = field(default_factory=list)
    joints_sstab: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "exact_sstab": self.exact_sstab,
            "lengths": self.lengths,
            "sstab_lengths": self.sstab_lengths,
            "joints": self.joints,
            "joints_sstab": self.joints_sstab,
        }


def _exact_at(alpha: Optional[SemilinearMap], beta: Optional[SemilinearMap], middle: SigmaModule) -> bool:
    im = image(alpha) if alpha is not None else zero_subobject(middle)
    ker = kernel(beta) if beta is not None else whole(middle)
    return im.contained_in(ker) and ker.contained_in(im)


def _check_chain(seq):
    for a, b in zip(seq, seq[1:]):
        if a.target != b.source:
            raise ShapeMismatch("non-composable chain")


def verify_exactness(seq: Sequence[SemilinearMap], left_zero: bool = False,
                     right_zero: bool = False) -> ExactnessReport:
    """Check im = ker at every joint, before and after taking sstab.

    left_zero / right_zero add the joints 0 -> first source and
    last target -> 0.
    """
    seq = list(seq)
    if not seq:
        raise ShapeMismatch("empty chain")
    _check_chain(seq)
    modules = [seq[0].source] + [a.target for a in seq]
    joints = []
    if left_zero:
        joints.append(_exact_at(None, seq[0], modules[0]))
    for a, b in zip(seq, seq[1:]):
        joints.append(_exact_at(a, b, a.target))
    if right_zero:
        joints.append(_exact_at(seq[-1], None, modules[-1]))

    subs = [sstab(M) for M in modules]
    smaps = [induced_sstab_hom(a, subs[k], subs[k + 1]) for k, a in enumerate(seq)]
    joints_s = []
    if left_zero:
        joints_s.append(_exact_at(None, smaps[0], subs[0].module))
    for a, b in zip(smaps, smaps[1:]):
        joints_s.append(_exact_at(a, b, a.target))
    if right_zero:
        joints_s.append(_exact_at(smaps[-1], None, subs[-1].module))
    return ExactnessReport(
        exact=all(joints),
        exact_sstab=all(joints_s),
        lengths=[M.length for M in modules],
        sstab_lengths=[s.length for s in subs],
        joints=joints,
        joints_sstab=joints_s,
    )


# ---------------------------------------------------------------------------
# random generation (property tests, CLI demos)

def random_module(R: GaloisRing, rng: random.Random, max_length: int = 6, max_rank: int = 3) -> SigmaModule:
    profile = []
    budget = max_length
    for _ in range(rng.randint(1, max_rank)):
        if budget < 1:
            break
        j = rng.randint(1, min(R.n, budget))
        profile.append(j)
        budget -= j
    profile.sort(reverse=True)
    return SigmaModule(R, profile, random_frobenius(R, profile, rng))


def random_frobenius(R: GaloisRing, profile, rng: random.Random):
    r = len(profile)
    A = []
    for s in range(r):
        row = []
        for t in range(r):
            a = R.random(rng)
            need = profile[s] - profile[t]
            if need > 0:
                a = R.scale(a, R.p ** need)
            row.append(a)
        A.append(row)
    return A


def generated_sigma_submodule(M: SigmaModule, gens) -> Subobject:
    """Smallest F-stable sub-module containing gens."""
    cur = span(M, gens, with_frobenius=False)
    while True:
        extra = [M.apply_F(b) for b in cur.basis]
        nxt = span(M, list(cur.basis) + extra, with_frobenius=False)
        if nxt.length == cur.length:
            _attach_frobenius(nxt)
            return nxt
        cur = nxt


def twisted_source(M: SigmaModule, i: int) -> SigmaModule:
    """M with F-matrix sigma^{-i}(A_F); the identity matrix is then an index-i map to M."""
    return SigmaModule(M.ring, M.profile, dg.mat_sigma(M.ring, M.F, -i))


def random_short_exact(R: GaloisRing, rng: random.Random, max_length: int = 6, index: int = 0):
    """0 -> S -> N -> N/S -> 0 with S a random sigma-sub-module; the
    first arrow carries the requested index."""
    N = random_module(R, rng, max_length)
    gens = [N.random_element(rng) for _ in range(rng.randint(0, 2))]
    sub = generated_sigma_submodule(N, gens)
    incl = sub.inclusion()
    if index:
        src = twisted_source(sub.module, index)
        incl = SemilinearMap(src, N, index, incl.matrix)
    q = quotient(N, sub)
    return incl, q.projection()
