"""Cyclic covers of P^n branched along a divisor, and experiments around them.

For Y -> P^n of degree d built from a section D of O(sd), the pushforward
of O_Y splits as the sum of O(-sj) for j = 0..d-1, and the Frobenius
acts on the j-th summand by multiplying with (j (p^e - 1)/d) D.
"""

from __future__ import annotations

import csv
import io
import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from .fields import FiniteField, get_field, is_prime
from .poly import Poly, monomials
from .proj_coh import cover_summand_action, fsplit_coefficient, psi_action, sstab_dim

SATISFIED = "criterion satisfied: H^n(W O_Q) != 0; not uniruled given W O-rational singularities"
INCONCLUSIVE = "inconclusive"


def uniruledness_verdict(h_lower_sstab: int, h_top_sstab: int) -> str:
    if h_lower_sstab < 0 or h_top_sstab < 0:
        raise ValueError("dimensions must be nonnegative")
    return SATISFIED if h_lower_sstab < h_top_sstab else INCONCLUSIVE


@dataclass
class CoverReport:
    n: int
    s: int
    d: int
    p: int
    m: int
    e: int
    D: str
    summands: list
    top_dim: int
    top_sstab: int
    lower_dim: int
    lower_sstab: int
    verdict: str
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def cyclic_cover_report(n: int, s: int, d: int, D: Poly, e: int) -> CoverReport:
    F = D.field
    # validates divisibility and degree
    psi_action(n, s, d, D, e)
    summands = []
    for j in range(d):
        if j == 0:
            # H^n(P^n, O) = 0 for n >= 1
            summands.append({"j": 0, "dim": 0, "sstab": 0, "lower_dim": 1 if n == 1 else 0,
                             "lower_sstab": 1 if n == 1 else 0})
            continue
        op = cover_summand_action(n, s, d, D, e, j)
        st = sstab_dim(op)
        # H^{n-1}(P^n, O(-sj)) vanishes for n >= 2; for n = 1 it is H^0(O(-sj)) = 0
        summands.append({"j": j, "dim": op.dim, "sstab": st.dim, "lower_dim": 0, "lower_sstab": 0})
    top_dim = sum(x["dim"] for x in summands)
    top_sstab = sum(x["sstab"] for x in summands)
    lower_dim = sum(x["lower_dim"] for x in summands)
    lower_sstab = sum(x["lower_sstab"] for x in summands)
    notes = ["H^{n-1} summands vanish on P^n except the constants H^0(O) when n = 1"]
    return CoverReport(n, s, d, F.p, F.m, e, str(D), summands, top_dim, top_sstab,
                       lower_dim, lower_sstab, uniruledness_verdict(lower_sstab, top_sstab), notes)


# ---------------------------------------------------------------------------
# genericity scans

@dataclass
class ScanRecord:
    seed: int
    trial: int
    D: str
    sstab: int
    dim: int


@dataclass
class ScanResult:
    n: int
    s: int
    d: int
    e: int
    field: str
    seed: int
    records: list
    counts: dict

    @property
    def trials(self) -> int:
        return len(self.records)

    @property
    def min(self) -> int:
        return min(self.counts)

    @property
    def max(self) -> int:
        return max(self.counts)

    @property
    def mode(self) -> int:
        return max(sorted(self.counts), key=lambda k: self.counts[k])

    def frequency(self, value: int) -> float:
        return self.counts.get(value, 0) / self.trials

    def summary(self) -> dict:
        return {
            "n": self.n, "s": self.s, "d": self.d, "e": self.e, "field": self.field,
            "seed": self.seed, "trials": self.trials, "min": self.min, "max": self.max,
            "mode": self.mode, "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "max_frequency": self.frequency(self.max),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["seed", "trial", "dim", "sstab", "D"])
        for r in self.records:
            w.writerow([r.seed, r.trial, r.dim, r.sstab, r.D])
        return buf.getvalue()


def random_divisor(F: FiniteField, n: int, degree: int, rng: random.Random) -> Poly:
    terms = {mono: F.random(rng) for mono in monomials(n + 1, degree)}
    return Poly(F, n + 1, terms)


def _scan_trial(args):
    spec, n, s, d, e, seed, t = args
    F = FiniteField.from_spec(spec)
    rng = random.Random(f"{seed}:{t}")
    D = random_divisor(F, n, s * d, rng)
    while not D:
        D = random_divisor(F, n, s * d, rng)
    op = psi_action(n, s, d, D, e)
    return ScanRecord(seed, t, str(D), sstab_dim(op).dim, op.dim)


def worker_count(requested: Optional[int] = None) -> int:
    env = os.environ.get("FROBWITT_THREADS")
    if env:
        return max(1, int(env))
    return max(1, requested or 1)


def _map(fn, jobs, workers: int):
    if workers <= 1 or len(jobs) < 2:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def genericity_scan(F: FiniteField, n: int, s: int, d: int, e: int, trials: int, seed: int,
                    workers: Optional[int] = None) -> ScanResult:
    """sstab dimension of the D-twisted action for uniformly random D (one RNG per trial)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    jobs = [(F.spec, n, s, d, e, seed, t) for t in range(trials)]
    records = _map(_scan_trial, jobs, worker_count(workers))
    counts = Counter(r.sstab for r in records)
    return ScanResult(n, s, d, e, F.spec, seed, records, dict(counts))


# ---------------------------------------------------------------------------
# Fermat quartic

FERMAT_QUARTIC = "x0^4 + x1^4 + x2^4 + x3^4"


@dataclass
class FermatRow:
    p: int
    residue: int
    coefficient: int
    fsplit: bool


@dataclass
class FermatScan:
    bound: int
    rows: list

    @property
    def density_split(self) -> float:
        return sum(r.fsplit for r in self.rows) / len(self.rows)

    @property
    def density_nonsplit(self) -> float:
        return 1.0 - self.density_split

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "residue", "fsplit"])
        for r in self.rows:
            w.writerow([r.p, r.residue, int(r.fsplit)])
        return buf.getvalue()

    def summary(self) -> dict:
        return {"bound": self.bound, "primes": len(self.rows),
                "density_split": self.density_split, "density_nonsplit": self.density_nonsplit,
                "split_iff_1_mod_4": all(r.fsplit == (r.residue == 1) for r in self.rows)}


def _fermat_row(p: int) -> FermatRow:
    F = get_field(p, 1)
    c = fsplit_coefficient(Poly.parse(FERMAT_QUARTIC, F, 4))
    return FermatRow(p, p % 4, c, c != 0)


def fermat_density_scan(prime_bound: int, workers: Optional[int] = None) -> FermatScan:
    if prime_bound < 3:
        raise ValueError("prime bound must be at least 3")
    primes = [p for p in range(3, prime_bound) if is_prime(p)]
    rows = _map(_fermat_row, primes, worker_count(workers))
    return FermatScan(prime_bound, rows)
