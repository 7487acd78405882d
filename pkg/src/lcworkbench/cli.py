"""``workbench`` command line.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 on malformed input.  Reports are JSON on stdout (or ``--out``).
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from fractions import Fraction

from . import acceptance
from .annihilation import build_g, check_T_derivation, structural_checks, verify_dual_path
from .catalog import check_K2_embedding, check_SB_subalgebra
from .documents import (DocumentError, algebra_from_doc, algebra_to_doc, build_algebra,
                        dump_document, load_document, module_from_doc, module_to_doc, report_json)
from .modules import build_module, reverse_parity
from .parsing import ParseError
from .submodules import FactorError, closure, composition_factors, irreducibility_probe

VALUE_FLAGS = {"--p", "--delta", "--lambda", "--alpha", "--beta", "--cutoff", "--k", "--N",
               "--imax", "--mmax", "--seed", "--trials", "--degree-bound", "--gen"}
_NEGATIVE = re.compile(r"^-[\d(.]")


def _glue_negative(argv):
    """Let ``--alpha -1/2`` through: argparse only accepts plain negative integers as values."""
    out, k = [], 0
    while k < len(argv):
        a = argv[k]
        if a in VALUE_FLAGS and k + 1 < len(argv) and _NEGATIVE.match(argv[k + 1]):
            out.append(f"{a}={argv[k + 1]}")
            k += 2
            continue
        out.append(a)
        k += 1
    return out


class Malformed(Exception):
    pass


def _emit(args, payload, ok):
    payload = dict(payload)
    payload["pass"] = bool(ok)
    text = report_json(payload)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def _seed(args):
    env = os.environ.get("WORKBENCH_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise Malformed(f"WORKBENCH_SEED must be an integer, got {env!r}") from None
    return args.seed


def _module_params(args):
    out = {}
    for flag, key in (("delta", "delta"), ("lam", "lam"), ("alpha", "alpha"), ("beta", "beta")):
        v = getattr(args, flag, None)
        if v is not None:
            out[key] = v
    if args.family == "trivial":
        out = {k: v for k, v in out.items() if k == "alpha"}
    elif args.family in ("V1", "V2"):
        out.pop("lam", None)
        out.pop("beta", None)
    return out


def _module_from_args(args):
    if getattr(args, "module", None):
        return module_from_doc(load_document(args.module))
    if not args.family:
        raise Malformed("give --family or --module")
    A = build_algebra(args.algebra, args.p, args.cutoff)
    M = build_module(args.family, _module_params(args), A, parity=args.parity)
    if args.reversed:
        M = reverse_parity(M)
    return M


# -- subcommands -----------------------------------------------------------

def cmd_algebra_build(args):
    A = build_algebra(args.family, args.p, args.cutoff)
    fmt = args.format
    if fmt is None:
        fmt = "toml" if args.out and args.out.endswith(".toml") else "json"
    text = dump_document(algebra_to_doc(A), fmt)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_algebra_verify(args):
    A = algebra_from_doc(load_document(args.file))
    reps = A.check_axioms()
    ok = all(r.passed for r in reps.values())
    return _emit(args, {"command": "algebra verify", "algebra": A.name,
                        "checks": [r.to_dict() for r in reps.values()]}, ok)


def cmd_ann_dual_path(args):
    rep = verify_dual_path(args.p, args.imax, args.mmax)
    return _emit(args, {"command": "ann verify-lemma31", "checks": [rep.to_dict()]}, rep.passed)


def cmd_ann_g(args):
    g = build_g(args.k, args.N, args.p)
    reps = structural_checks(g)
    if args.checks != "all":
        wanted = [c.strip() for c in args.checks.split(",")]
        missing = [w for w in wanted if w not in reps]
        if missing:
            raise Malformed(f"unknown checks {missing}; available: {sorted(reps)}")
        reps = {w: reps[w] for w in wanted}
    ok = all(r.passed for r in reps.values())
    return _emit(args, {"command": "ann g", "algebra": g.name, "dimension": g.dimension(),
                        "checks": [dict(r.to_dict(), name=k) for k, r in reps.items()]}, ok)


def cmd_module_build(args):
    M = _module_from_args(args)
    fmt = args.format
    if fmt is None:
        fmt = "toml" if args.out and args.out.endswith(".toml") else "json"
    text = dump_document(module_to_doc(M), fmt)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_module_verify(args):
    M = module_from_doc(load_document(args.file))
    rep = M.check_module_axioms()
    return _emit(args, {"command": "module verify", "module": M.name,
                        "checks": [rep.to_dict()]}, rep.passed)


def cmd_closure(args):
    M = module_from_doc(load_document(args.module))
    if not args.gen:
        raise Malformed("give at least one --gen")
    B = closure(M, args.gen)
    names = [g.name for g in M.generators]
    payload = {"command": "submodule closure", "module": M.name, "generators": args.gen,
               "basis": B.to_strings(names), "pivots": B.pivots, "full": B.is_full()}
    return _emit(args, payload, True)


def cmd_factors(args):
    M = _module_from_args(args)
    payload = {"command": "factors", "module": M.name, "algebra": M.algebra.name}
    try:
        labels, steps = composition_factors(M)
    except FactorError as exc:
        payload["error"] = str(exc)
        return _emit(args, payload, False)
    payload["factors"] = labels
    payload["multiplicity_one"] = len(set(labels)) == len(labels)
    payload["transcript"] = steps
    return _emit(args, payload, True)


def cmd_probe(args):
    M = _module_from_args(args)
    res = irreducibility_probe(M, args.degree_bound, args.trials, _seed(args))
    res["command"] = "probe"
    return _emit(args, res, True)


def _verify_suite(p, cutoff, seed):
    from .catalog import build_KB_quotient

    checks = []
    A = build_KB_quotient(p, cutoff)
    for key, rep in A.check_axioms().items():
        checks.append(acceptance._rep_entry(f"{key} {A.name}", rep))
    checks.append(acceptance._rep_entry("K2 embedding", check_K2_embedding(p, cutoff)))
    checks.append(acceptance._rep_entry("SB subalgebra", check_SB_subalgebra(p, cutoff)))
    imax = max(1, min(cutoff, 3))
    checks.append(acceptance._rep_entry(f"dual-path window imax={imax}", verify_dual_path(p, imax, 3)))
    checks.append(acceptance._rep_entry("extended derivation T", check_T_derivation(p, min(imax, 2))))
    top = min(cutoff, 2)
    for k in range(top + 1):
        for N in range(top + 1):
            g = build_g(k, N, p)
            for key, rep in structural_checks(g).items():
                checks.append(acceptance._rep_entry(f"{key} g({k},{N})", rep))
    alpha = Fraction(1, 3)
    for row, family, params in acceptance.table_rows():
        par = {k: str(v) for k, v in params.items()}
        par["alpha"] = str(alpha)
        M = build_module(family, par, A)
        checks.append(acceptance._rep_entry(f"axioms {M.name}", M.check_module_axioms()))
        want = acceptance.expected_factors(row, alpha)
        try:
            got, _ = composition_factors(M)
            checks.append(acceptance._entry(f"factors {M.name}", got == want, factors=got))
        except FactorError as exc:
            checks.append(acceptance._entry(f"factors {M.name}", False, error=str(exc)))
    if A.meta["p"] == A.context(-1) and cutoff >= 1:
        M = build_module("V22", {"delta": "1/3", "lam": "2", "alpha": "-1", "beta": "5"}, A)
        checks.append(acceptance._rep_entry(f"axioms {M.name}", M.check_module_axioms()))
    M = build_module("V1", {"delta": "0", "alpha": "1"}, A)
    res = irreducibility_probe(M, 3, 20, seed)
    checks.append(acceptance._entry(f"probe {M.name}", res["verdict"] == "REDUCIBLE",
                                    verdict=res["verdict"], seed=seed))
    return checks


def cmd_verify_all(args):
    if args.criterion is not None:
        res = acceptance.run_criterion(args.criterion, seed=_seed(args))
        res["command"] = f"verify-all --criterion {args.criterion}"
        return _emit(args, res, res["pass"])
    if args.p is None:
        raise Malformed("verify-all needs --p (or --criterion)")
    checks = _verify_suite(args.p, args.cutoff, _seed(args))
    failed = [c["check"] for c in checks if not c["pass"]]
    return _emit(args, {"command": "verify-all", "p": args.p, "cutoff": args.cutoff,
                        "checks": checks, "failed": failed}, not failed)


# -- parser ----------------------------------------------------------------

def _module_flags(sp, need_family=False):
    sp.add_argument("--family", choices=["trivial", "V1", "V2", "V22"], required=need_family)
    sp.add_argument("--algebra", choices=["kb", "kn", "k2"], default="kb")
    sp.add_argument("--p", default=None, help="parameter p (rational or Gaussian rational)")
    sp.add_argument("--cutoff", type=int, default=2)
    sp.add_argument("--delta", default="0")
    sp.add_argument("--lambda", dest="lam", default="0")
    sp.add_argument("--alpha", default="0")
    sp.add_argument("--beta", default=None)
    sp.add_argument("--parity", type=int, default=0, help="parity of the trivial module")
    sp.add_argument("--reversed", action="store_true", help="reverse parity")


def build_parser():
    ap = argparse.ArgumentParser(prog="workbench",
                                 description="Exact checks for Block type Lie conformal superalgebras.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    alg = sub.add_parser("algebra").add_subparsers(dest="sub", required=True)
    b = alg.add_parser("build")
    b.add_argument("--family", choices=["kb", "kn", "k2"], default="kb")
    b.add_argument("--p", default=None)
    b.add_argument("--cutoff", type=int, default=0)
    b.add_argument("--out")
    b.add_argument("--format", choices=["json", "toml"])
    b.set_defaults(fn=cmd_algebra_build)
    v = alg.add_parser("verify")
    v.add_argument("file")
    v.add_argument("--out")
    v.add_argument("--format", choices=["json"], default="json")
    v.set_defaults(fn=cmd_algebra_verify)

    ann = sub.add_parser("ann").add_subparsers(dest="sub", required=True)
    l31 = ann.add_parser("verify-lemma31")
    l31.add_argument("--p", required=True)
    l31.add_argument("--imax", type=int, default=3)
    l31.add_argument("--mmax", type=Fraction, default=Fraction(4))
    l31.add_argument("--out")
    l31.add_argument("--format", choices=["json"], default="json")
    l31.set_defaults(fn=cmd_ann_dual_path)
    g = ann.add_parser("g")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--N", type=int, required=True)
    g.add_argument("--p", required=True)
    g.add_argument("--checks", default="all")
    g.add_argument("--out")
    g.add_argument("--format", choices=["json"], default="json")
    g.set_defaults(fn=cmd_ann_g)

    mod = sub.add_parser("module").add_subparsers(dest="sub", required=True)
    mb = mod.add_parser("build")
    _module_flags(mb, need_family=True)
    mb.add_argument("--out")
    mb.add_argument("--format", choices=["json", "toml"])
    mb.set_defaults(fn=cmd_module_build)
    mv = mod.add_parser("verify")
    mv.add_argument("file")
    mv.add_argument("--out")
    mv.add_argument("--format", choices=["json"], default="json")
    mv.set_defaults(fn=cmd_module_verify)

    sm = sub.add_parser("submodule").add_subparsers(dest="sub", required=True)
    cl = sm.add_parser("closure")
    cl.add_argument("--module", required=True)
    cl.add_argument("--gen", action="append", default=[])
    cl.add_argument("--out")
    cl.add_argument("--format", choices=["json"], default="json")
    cl.set_defaults(fn=cmd_closure)

    fa = sub.add_parser("factors")
    _module_flags(fa)
    fa.add_argument("--module")
    fa.add_argument("--out")
    fa.add_argument("--format", choices=["json"], default="json")
    fa.set_defaults(fn=cmd_factors)

    pr = sub.add_parser("probe")
    _module_flags(pr)
    pr.add_argument("--module")
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--trials", type=int, default=50)
    pr.add_argument("--degree-bound", dest="degree_bound", type=int, default=3)
    pr.add_argument("--out")
    pr.add_argument("--format", choices=["json"], default="json")
    pr.set_defaults(fn=cmd_probe)

    va = sub.add_parser("verify-all")
    va.add_argument("--p", default=None)
    va.add_argument("--cutoff", type=int, default=2)
    va.add_argument("--criterion", type=int, choices=sorted(acceptance.CRITERIA))
    va.add_argument("--seed", type=int, default=0)
    va.add_argument("--out")
    va.add_argument("--format", choices=["json"], default="json")
    va.set_defaults(fn=cmd_verify_all)
    return ap


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (Malformed, DocumentError, ParseError, ValueError, KeyError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        sys.stderr.write(f"workbench: error: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
