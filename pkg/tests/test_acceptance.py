"""End-to-end acceptance checks.  Each test prints one PASS/FAIL line."""

import itertools
import math
import random
import time

import pytest

from frobwitt import covers
from frobwitt import proj_coh as pc
from frobwitt import sigma_mod as sm
from frobwitt import witt_coh as wc
from frobwitt.cli import run
from frobwitt.fields import get_field
from frobwitt.galois import get_ring
from frobwitt.poly import Poly, monomials
from frobwitt.witt import (WittVector, frobenius_F, from_integral, restriction_R, to_integral,
                           verschiebung_V, witt_from_int)

from oracles import cartier_iterated, cartier_manin_stable_rank


def report(capsys, number, ok, detail, started):
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"\ncriterion {number}: {status} ({time.perf_counter() - started:.2f}s) {detail}")
    assert ok, detail


# 1. Witt ring structure

def _integral_iso_exhaustive(p, n):
    F = get_field(p)
    R = get_ring(F, n)
    seen = set()
    for coords in itertools.product(range(p), repeat=n):
        x = WittVector(coords, F)
        z = to_integral(x)
        if from_integral(z) != x:
            return False
        seen.add(z.value)
    if len(seen) != p ** n:
        return False
    # additive and multiplicative compatibility on all pairs
    elems = [WittVector(c, F) for c in itertools.product(range(p), repeat=n)]
    for a in elems:
        va = to_integral(a).value
        for b in elems:
            vb = to_integral(b).value
            if to_integral(a + b).value != R.add(va, vb) or to_integral(a * b).value != R.mul(va, vb):
                return False
    return True


def _identities(p, m, n, trials, rng):
    F = get_field(p, m)
    pw = witt_from_int(p, F, n)
    pw1 = witt_from_int(p, F, n + 1)
    for _ in range(trials):
        x = WittVector([F.random(rng) for _ in range(n)], F)
        px = pw * x
        vfr = verschiebung_V(frobenius_F(restriction_R(x))) if n > 1 else WittVector.zero(F, 1)
        if px != vfr:
            return "p = VFR"
        if frobenius_F(verschiebung_V(x)) != verschiebung_V(frobenius_F(x)):
            return "FV = VF"
        if pw * frobenius_F(x) != frobenius_F(px):
            return "pF = Fp"
        if verschiebung_V(px) != pw1 * verschiebung_V(x):
            return "Vp = pV"
    return None


def test_criterion_1_witt_ring(capsys):
    t0 = time.perf_counter()
    iso = all(_integral_iso_exhaustive(p, n) for p, n in [(2, 3), (3, 2), (5, 2)])
    rng = random.Random(1)
    failures = []
    for p in (2, 3, 5):
        for m in (1, 2):
            for n in (1, 2, 3, 4):
                bad = _identities(p, m, n, 10 ** 4, rng)
                if bad:
                    failures.append((p, m, n, bad))
    elapsed = time.perf_counter() - t0
    ok = iso and not failures and elapsed < 10
    report(capsys, 1, ok, f"isomorphism={iso} identity_failures={failures} "
                          f"trials=10^4 x 24 configurations budget=10s", t0)


# 2. sigma-module category

def test_criterion_2_short_exact(capsys):
    t0 = time.perf_counter()
    rng = random.Random(2)
    configs = [(p, m, n) for p in (2, 3, 5) for m in (1, 2) for n in (1, 2, 3)]
    bad = 0
    for k in range(1000):
        p, m, n = configs[k % len(configs)]
        R = get_ring(get_field(p, m), n)
        a, b = sm.random_short_exact(R, rng, 6, rng.randint(-2, 2))
        rep = sm.verify_exactness([a, b], left_zero=True, right_zero=True)
        ok = (rep.exact and rep.exact_sstab
              and rep.lengths[1] == rep.lengths[0] + rep.lengths[2]
              and rep.sstab_lengths[1] == rep.sstab_lengths[0] + rep.sstab_lengths[2]
              and all(sm.frobenius_is_bijective(sm.sstab(M).module)
                      for M in (a.source, a.target, b.target)))
        bad += not ok
    elapsed = time.perf_counter() - t0
    report(capsys, 2, bad == 0 and elapsed < 30, f"sequences=1000 failures={bad} budget=30s", t0)


# 3. Fermat quartic

def test_criterion_3_fermat(capsys):
    t0 = time.perf_counter()
    scan = covers.fermat_density_scan(200)
    summ = scan.summary()
    elapsed = time.perf_counter() - t0
    ok = (summ["split_iff_1_mod_4"] and abs(scan.density_split - 0.5) <= 0.1
          and abs(scan.density_nonsplit - 0.5) <= 0.1 and elapsed < 5)
    report(capsys, 3, ok, f"primes={summ['primes']} split={scan.density_split:.3f} "
                          f"nonsplit={scan.density_nonsplit:.3f} budget=5s", t0)


# 4. trace on monomials

def test_criterion_4_trace(capsys):
    t0 = time.perf_counter()
    mismatches = 0
    checked = 0
    for p in (2, 3, 5):
        for e in (1, 2):
            for a in range(31):
                checked += 1
                mismatches += pc.trace_on_monomial(p, e, (a,)) != cartier_iterated(p, e, (a,))
                for b in range(31):
                    checked += 1
                    mismatches += pc.trace_on_monomial(p, e, (a, b)) != cartier_iterated(p, e, (a, b))
    report(capsys, 4, mismatches == 0, f"monomials={checked} mismatches={mismatches}", t0)


# 5. closed form of the twisted action on P^1

def test_criterion_5_psi_closed_form(capsys):
    t0 = time.perf_counter()
    F3 = get_field(3)
    mons = monomials(2, 4)
    wrong = 0
    for coeffs in itertools.product(range(3), repeat=len(mons)):
        if not any(coeffs):
            continue
        D = Poly(F3, 2, {m: c for m, c in zip(mons, coeffs) if c})
        dim = pc.sstab_dim(pc.psi_action(1, 2, 2, D, 1)).dim
        wrong += dim != (1 if D.coeff((2, 2)) else 0)
    details = [f"exhaustive_mismatches={wrong}"]
    ok = wrong == 0
    for q, (p, m) in ((3, (3, 1)), (9, (3, 2))):
        scan = covers.genericity_scan(get_field(p, m), 1, 2, 2, 1, 1000, seed=5)
        freq = scan.frequency(1)
        target = 1 - 1 / q
        sigma = math.sqrt(target * (1 - target) / scan.trials)
        within = abs(freq - target) <= 3 * sigma
        ok = ok and within
        details.append(f"q={q} freq={freq:.3f} target={target:.3f} 3sigma={3 * sigma:.3f}")
    elapsed = time.perf_counter() - t0
    report(capsys, 5, ok and elapsed < 10, " ".join(details) + " budget=10s", t0)


# 6. duality

def test_criterion_6_duality(capsys):
    t0 = time.perf_counter()
    rng = random.Random(6)
    cases = 0
    bad = []
    for p in (3, 5, 7):
        F = get_field(p)
        for d in (2, 3):
            if (p - 1) % d:
                continue
            for n in (1, 2):
                for s in range(n + 1, 7):
                    D = Poly(F, n + 1, {m: F.random(rng) for m in monomials(n + 1, s * d)})
                    psi = pc.psi_action(n, s, d, D, 1)
                    dual = pc.dual_action(n, s, d, D, 1)
                    cases += 1
                    if not pc.residue_transpose_matches(psi, dual):
                        bad.append((p, d, n, s))
    report(capsys, 6, not bad, f"cases={cases} failures={bad}", t0)


# 7. special divisors

def test_criterion_7_special_divisor(capsys):
    t0 = time.perf_counter()
    rows = []
    ok = True
    F = get_field(5)
    for n in (1, 2):
        for l in (1, 2, 3):
            sd = pc.minimal_special_s(F, n, 2, l)
            # recompute independently of the construction's own bookkeeping
            dim = pc.sstab_dim(pc.psi_action(n, sd.s, 2, sd.D, sd.e)).dim
            local = all(all(pc.local_conditions(sd.h, P)) for P in sd.points)
            ok = ok and dim >= l and local
            rows.append(f"P^{n} l={l} s={sd.s} sstab={dim}")
    report(capsys, 7, ok, "; ".join(rows), t0)


# 8 and 9. Witt towers of curves and witnesses

ORDINARY = [(3, "x1^2*x2 - x0^3 - x0^2*x2 - x2^3"), (5, "x1^2*x2 - x0^3 - x0*x2^2"),
            (7, "x1^2*x2 - x0^3 - x2^3")]
SUPERSINGULAR = [(3, "x1^2*x2 - x0^3 - x0*x2^2"), (5, "x1^2*x2 - x0^3 - x2^3"),
                 (7, "x1^2*x2 - x0^3 - x0*x2^2")]
GENUS2 = (3, "x1^2*x2^3 - x0^5 - x0*x2^4 - x2^5", [1, 1, 0, 0, 0, 1])


@pytest.fixture(scope="module")
def towers():
    out = {}
    for kind, p, f in ([("ordinary", p, f) for p, f in ORDINARY]
                       + [("supersingular", p, f) for p, f in SUPERSINGULAR]
                       + [("genus2", GENUS2[0], GENUS2[1])]):
        t = time.perf_counter()
        poly = Poly.parse(f, get_field(p), 3)
        out[(kind, p)] = (poly, wc.witt_tower(poly, 3), time.perf_counter() - t)
    return out


def test_criterion_8_towers(capsys, towers):
    t0 = time.perf_counter()
    ok = True
    rows = []
    for (kind, p), (poly, T, secs) in towers.items():
        exact = all(r.exact and r.exact_sstab for r in T.exactness.values())
        if kind == "genus2":
            stable = cartier_manin_stable_rank(get_field(p), GENUS2[2], 2)
            inequality = 1 < T.sstab_lengths[0]
            growth = all(T.sstab_lengths[j - 1] >= j for j in (1, 2, 3))
            good = inequality and growth and stable == 2 and T.sstab_lengths[0] == stable
        else:
            ordinary = pc.hasse_invariant(poly) != 0
            want = [1, 2, 3] if kind == "ordinary" else [0, 0, 0]
            good = (ordinary == (kind == "ordinary") and T.lengths == [1, 2, 3]
                    and T.sstab_lengths == want)
        good = good and exact and secs < 300
        ok = ok and good
        rows.append(f"{kind} p={p} lengths={T.lengths} sstab={T.sstab_lengths} {secs:.2f}s")
    report(capsys, 8, ok, "; ".join(rows), t0)


def test_criterion_9_witnesses(capsys, towers):
    t0 = time.perf_counter()
    ok = True
    rows = []
    for (kind, p), (_poly, T, _secs) in towers.items():
        w = wc.nonvanishing_witness(T, 2)
        expect = kind != "supersingular"
        good = w.found == expect and (not w.found or w.j <= 3)
        ok = ok and good
        rows.append(f"{kind} p={p} " + (f"j_2={w.j}" if w.found else "none"))
    report(capsys, 9, ok, "; ".join(rows), t0)


# 10. reproducibility of reports

CLI_RUNS = [
    ["witt", "--p", "5", "--m", "2", "--op", "mul", "--x", "3,7,1", "--y", "2,0,4"],
    ["sigma", "--p", "3", "--m", "2", "--n", "2", "--trials", "20", "--seed", "11"],
    ["fsplit", "--p", "13", "--f", "x0^4 + x1^4 + x2^4 + x3^4"],
    ["hasse", "--p", "7", "--f", "x1^2*x2 - x0^3 - x2^3"],
    ["psi", "--p", "5", "--n", "2", "--s", "3", "--d", "2", "--D", "x0^6 + x1^6 + x2^6 + x0^2*x1^2*x2^2"],
    ["cover", "--p", "3", "--s", "3", "--d", "2", "--D", "x0^3*x1^3 + x0^5*x1 + x0*x1^5"],
    ["scan", "--p", "3", "--m", "2", "--s", "2", "--d", "2", "--trials", "200", "--seed", "9"],
    ["fermat", "--bound", "100"],
    ["tower", "--curve", "x1^2*x2 - x0^3 - x0*x2^2", "--p", "5", "--J", "2"],
]


def test_criterion_10_reproducible(capsys, tmp_path):
    t0 = time.perf_counter()
    differing = []
    for argv in CLI_RUNS:
        blobs = []
        for k in (0, 1):
            out = tmp_path / f"{argv[0]}-{k}"
            if run(argv + ["--out", str(out)]) != 0:
                differing.append(f"{argv[0]}:exit")
            blobs.append({f.name: f.read_bytes() for f in sorted(out.iterdir())})
        if blobs[0] != blobs[1] or not blobs[0]:
            differing.append(argv[0])
    report(capsys, 10, not differing, f"subcommands={len(CLI_RUNS)} differing={differing}", t0)
