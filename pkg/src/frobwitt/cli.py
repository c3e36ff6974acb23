"""Command-line front end.

    frobwitt <command> [options]      or      frobwitt --config run.json

Every command writes <command>.json (plus a CSV for scan/fermat) into
--out and prints a short summary.  Exit status: 0 success, 1 malformed
input, 2 invariant violation, 3 resource bound.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import covers, proj_coh, sigma_mod, witt, witt_coh
from .errors import FrobWittError, InvariantViolation, ParseError, ResourceBound
from .fields import FiniteField, get_field
from .galois import get_ring
from .poly import Poly


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _field(args) -> FiniteField:
    if getattr(args, "field", None):
        return FiniteField.from_spec(args.field)
    return get_field(args.p, args.m)


def _write(out: Path, name: str, payload, text: str | None = None):
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    if text is None:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    path.write_text(text)
    return path


# ---------------------------------------------------------------------------
# commands

def cmd_witt(args) -> dict:
    F = _field(args)
    x = witt.WittVector.from_json(args.x.split(","), F)
    n = x.n
    ops = {
        "F": lambda: witt.frobenius_F(x),
        "V": lambda: witt.verschiebung_V(x),
        "R": lambda: witt.restriction_R(x),
        "p": lambda: witt.mult_p(x),
        "neg": lambda: -x,
    }
    if args.op in ("add", "sub", "mul"):
        if not args.y:
            raise ParseError(f"--y is required for {args.op}")
        y = witt.WittVector.from_json(args.y.split(","), F)
        res = {"add": x + y, "sub": x - y, "mul": x * y}[args.op]
    elif args.op in ops:
        res = ops[args.op]()
    else:
        raise ParseError(f"unknown Witt operation {args.op!r}")
    out = {"field": F.spec, "n": n, "op": args.op, "x": x.to_json(),
           "result": res.to_json(), "integral": str(witt.to_integral(res).value)}
    if args.y:
        out["y"] = args.y.split(",")
    print(f"{args.op}({args.x}{', ' + args.y if args.y else ''}) = ({', '.join(res.to_json())})")
    return out


def cmd_sigma(args) -> dict:
    if args.input:
        data = json.loads(Path(args.input).read_text())
        M = sigma_mod.SigmaModule.from_json(data["module"])
        report = {"module": M.to_json(), "length": M.length}
        S = sigma_mod.sstab(M)
        report["sstab_length"] = S.length
        report["sstab_profile"] = list(S.profile)
        report["F_bijective_on_sstab"] = sigma_mod.frobenius_is_bijective(S.module)
        if "map" in data:
            mp = data["map"]
            N = sigma_mod.SigmaModule.from_json(mp["target"])
            R = M.ring
            A = [[R.parse(a) for a in row] for row in mp["matrix"]]
            alpha = sigma_mod.SemilinearMap(M, N, int(mp.get("index", 0)), A)
            parts = sigma_mod.hom_parts(alpha)
            report["kernel_profile"] = list(parts.kernel.profile)
            report["image_profile"] = list(parts.image.profile)
            report["cokernel_profile"] = list(parts.cokernel.module.profile)
        print(f"length {report['length']}, sstab length {report['sstab_length']}")
        return report
    F = _field(args)
    R = get_ring(F, args.n)
    rng = random.Random(args.seed)
    rows = []
    for t in range(args.trials):
        a, b = sigma_mod.random_short_exact(R, rng, args.max_length, rng.randint(-2, 2))
        rep = sigma_mod.verify_exactness([a, b], left_zero=True, right_zero=True)
        ln = rep.lengths
        rows.append({"trial": t, "lengths": ln, "sstab_lengths": rep.sstab_lengths,
                     "exact": rep.exact, "exact_sstab": rep.exact_sstab,
                     "additive": ln[1] == ln[0] + ln[2]})
    ok = all(r["exact"] and r["exact_sstab"] and r["additive"] for r in rows)
    print(f"{args.trials} random short exact sequences over W_{args.n}(F_{F.q}): {'all pass' if ok else 'FAILURES'}")
    if not ok:
        raise InvariantViolation("a random short exact sequence failed a check")
    return {"field": F.spec, "n": args.n, "seed": args.seed, "trials": rows, "all_pass": ok}


def cmd_fsplit(args) -> dict:
    F = _field(args)
    f = Poly.parse(args.f, F)
    c = proj_coh.fsplit_coefficient(f)
    print(f"coefficient {F.format(c)}: {'F-split' if c else 'not F-split'}")
    return {"f": str(f), "field": F.spec, "coefficient": F.format(c), "fsplit": bool(c)}


def cmd_hasse(args) -> dict:
    F = _field(args)
    f = Poly.parse(args.f, F)
    h = proj_coh.hasse_invariant(f)
    out = {"f": str(f), "field": F.spec, "hasse": F.format(h), "ordinary": bool(h)}
    if f.nvars == 3:
        X = proj_coh.HypersurfaceX.from_poly(f)
        op = proj_coh.frobenius_on_structure_coh(X, 1)
        out["frobenius_matrix"] = op.to_json()["matrix"]
        out["sstab_dim"] = proj_coh.sstab_dim(op).dim
    print(f"Hasse invariant {F.format(h)}: {'ordinary' if h else 'supersingular'}")
    return out


def _divisor(args, F):
    return Poly.parse(args.D, F, args.n + 1)


def cmd_psi(args) -> dict:
    F = _field(args)
    D = _divisor(args, F)
    op = proj_coh.psi_action(args.n, args.s, args.d, D, args.e)
    st = proj_coh.sstab_dim(op)
    dual = proj_coh.dual_action(args.n, args.s, args.d, D, args.e)
    out = {"field": F.spec, "n": args.n, "s": args.s, "d": args.d, "e": args.e, "D": str(D),
           "psi": op.to_json(), "sstab_dim": st.dim, "dual": dual.to_json(),
           "dual_sstab_dim": proj_coh.sstab_dim(dual).dim,
           "residue_transpose": proj_coh.residue_transpose_matches(op, dual)}
    print(f"dim H^{args.n}(O(-{args.s})) = {op.dim}, sstab_dim = {st.dim}")
    return out


def cmd_cover(args) -> dict:
    F = _field(args)
    D = _divisor(args, F)
    rep = covers.cyclic_cover_report(args.n, args.s, args.d, D, args.e)
    print(f"H^{args.n}(Y,O) sstab {rep.top_sstab}, H^{args.n - 1}(Y,O) sstab {rep.lower_sstab}: {rep.verdict}")
    return rep.to_json()


def cmd_scan(args) -> tuple:
    F = _field(args)
    res = covers.genericity_scan(F, args.n, args.s, args.d, args.e, args.trials, args.seed, args.threads)
    summ = res.summary()
    print(f"{res.trials} trials: sstab dims {summ['counts']}, max attained with frequency {summ['max_frequency']:.3f}")
    return summ, ("scan.csv", res.to_csv())


def cmd_fermat(args) -> tuple:
    res = covers.fermat_density_scan(args.bound, args.threads)
    summ = res.summary()
    print(f"{summ['primes']} odd primes < {args.bound}: F-split density {summ['density_split']:.3f}, "
          f"non-split density {summ['density_nonsplit']:.3f}")
    return summ, ("fermat.csv", res.to_csv())


def cmd_tower(args) -> dict:
    F = get_field(args.p, 1)
    f = Poly.parse(args.curve, F, 3)
    T = witt_coh.witt_tower(f, args.J)
    out = T.to_json()
    out["growth"] = T.growth()
    wits = []
    for i in range(args.J):
        try:
            wits.append(witt_coh.nonvanishing_witness(T, i, args.witness_mode).to_json())
        except ResourceBound as exc:
            wits.append({"i": i, "found": False, "j_i": None, "mode": args.witness_mode,
                         "reason": f"insufficient depth: {exc}"})
    out["witnesses"] = wits
    print(f"lengths {T.lengths}, sstab lengths {T.sstab_lengths}")
    return out


COMMANDS = {
    "witt": cmd_witt, "sigma": cmd_sigma, "fsplit": cmd_fsplit, "hasse": cmd_hasse,
    "psi": cmd_psi, "cover": cmd_cover, "scan": cmd_scan, "fermat": cmd_fermat, "tower": cmd_tower,
}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="frobwitt", description=__doc__.split("\n")[0])
    ap.add_argument("--config", help="JSON file with 'command' and option values")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, field=True):
        sp.add_argument("--out", default=".", help="directory for report files")
        sp.add_argument("--seed", type=int, default=0)
        if field:
            sp.add_argument("--p", type=int, default=3)
            sp.add_argument("--m", type=int, default=1)
            sp.add_argument("--field", help="field spec p^m:c0,...,cm (overrides --p/--m)")
        return sp

    sp = common(sub.add_parser("witt", help="Witt vector arithmetic"))
    sp.add_argument("--op", required=True, choices=["add", "sub", "mul", "neg", "F", "V", "R", "p"])
    sp.add_argument("--x", required=True, help="comma separated coordinates")
    sp.add_argument("--y")

    sp = common(sub.add_parser("sigma", help="sigma-module operations"))
    sp.add_argument("--input", help="JSON with 'module' (and optionally 'map')")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--max-length", type=int, default=6)

    for name in ("fsplit", "hasse"):
        sp = common(sub.add_parser(name))
        sp.add_argument("--f", required=True)

    for name in ("psi", "cover", "scan"):
        sp = common(sub.add_parser(name))
        sp.add_argument("--n", type=int, default=1)
        sp.add_argument("--s", type=int, required=True)
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--e", type=int, default=1)
        if name == "scan":
            sp.add_argument("--trials", type=int, default=1000)
            sp.add_argument("--threads", type=int, default=1)
        else:
            sp.add_argument("--D", required=True)

    sp = common(sub.add_parser("fermat"), field=False)
    sp.add_argument("--bound", type=int, default=200)
    sp.add_argument("--threads", type=int, default=1)

    sp = common(sub.add_parser("tower"), field=False)
    sp.add_argument("--curve", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--J", type=int, default=3)
    sp.add_argument("--witness-mode", default="direct", choices=["direct", "proof"])
    return ap


def _config_argv(argv: list) -> list:
    """Expand --config FILE into explicit arguments (explicit flags win)."""
    if "--config" not in argv:
        return argv
    k = argv.index("--config")
    if k + 1 >= len(argv):
        raise ParseError("--config needs a file")
    cfg = json.loads(Path(argv[k + 1]).read_text())
    rest = argv[:k] + argv[k + 2:]
    cmd = cfg.pop("command", None)
    if rest and rest[0] in COMMANDS:
        cmd, rest = rest[0], rest[1:]
    if cmd is None:
        raise ParseError("no command given")
    expanded = [cmd]
    for key, val in cfg.items():
        expanded += [f"--{key.replace('_', '-')}", str(val)]
    return expanded + rest


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _config_argv(argv)
        args = build_parser().parse_args(argv)
        if not args.command:
            raise ParseError("no command given")
        result = COMMANDS[args.command](args)
        out = Path(args.out)
        extra = None
        if isinstance(result, tuple):
            result, extra = result
        _write(out, f"{args.command}.json", result)
        if extra:
            _write(out, extra[0], None, extra[1])
        return 0
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except ResourceBound as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return 3
    except (FrobWittError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
