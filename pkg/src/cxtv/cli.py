"""Command-line front end.

Exit codes: 0 certified success, 2 budget exhausted (best-effort report
written), 1 input error (diagnostics on standard error).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import cohomology as C
from . import fh_index as FH
from . import io
from .errors import CxtvError
from .generate import GENERICITY, generate_instance
from .search import SearchConfig
from .transversal import (FlagCert, TransversalCert, Verdict, search_flag_transversal, search_odd_transversal,
                          search_transversal, verify_flag, verify_transversal)
from .tverberg import TverbergCert, TvInstance, search_tv, verify_tv

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2


class UsageError(CxtvError):
    pass


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _config(args) -> SearchConfig:
    cfg = SearchConfig(seed=args.seed, workers=args.workers)
    if args.budget is not None:
        cfg.budget = args.budget
    return cfg


def _ints(s: str | None) -> list | None:
    if s is None:
        return None
    return [int(x) for x in s.replace(",", " ").split()]


# ---- searches ------------------------------------------------------------------


def _run_search(args, kind: str) -> int:
    doc = io.read(args.instance)
    ikind, obj = io.load_instance(doc)
    cfg = _config(args)
    t0 = time.perf_counter()
    if kind in ("tverberg", "tverberg-colorful", "tverberg-odd"):
        if ikind != "tverberg":
            raise UsageError(f"{kind} needs a tverberg instance, got {ikind}")
        inst: TvInstance = obj
        if kind == "tverberg-colorful" and not inst.colorful:
            raise UsageError("tverberg-colorful needs an instance with colors")
        if kind == "tverberg-odd" and inst.variant != "complex-plus-line":
            raise UsageError("tverberg-odd needs variant complex-plus-line")
        if kind == "tverberg" and (inst.colorful or inst.variant != "complex"):
            raise UsageError("use tverberg-colorful or tverberg-odd for this instance")
        if args.budget is None:
            cfg.budget = 400
        res = search_tv(inst, cfg)
        check = lambda c: verify_tv(c, inst)
    else:
        if ikind == "tverberg":
            raise UsageError(f"{kind} needs a measures or gadget instance")
        d, k, measures = obj
        if args.k is not None:
            k = args.k
        if kind == "transversal":
            res = search_transversal(measures, k, cfg)
            check = lambda c: verify_transversal(c, measures, "complex")
        elif kind == "odd-transversal":
            res = search_odd_transversal(measures, k, cfg)
            check = lambda c: verify_transversal(c, measures, "complex-plus-line")
        else:
            res = search_flag_transversal(measures, k, cfg)
            check = lambda c: verify_flag(c, measures)
    elapsed = time.perf_counter() - t0
    if isinstance(res, (TransversalCert, FlagCert, TverbergCert)):
        ckind, payload = io.cert_to_json(res)
        verdict = check(res)
        if args.recheck:
            verdict = check(io.cert_from_json(ckind, json.loads(json.dumps(payload))))
        out = io.certificate_file(ckind, payload, verdict, elapsed)
        out["instance"] = doc
        _emit(args, io.dumps(out))
        if not verdict.ok:
            print(f"certificate failed verification: {verdict.reason}", file=sys.stderr)
            return EXIT_INPUT
        return EXIT_OK
    out = io.certificate_file("report", io.report_to_json(res), None, elapsed, status="budget-exhausted")
    out["instance"] = doc
    _emit(args, io.dumps(out))
    print("no certificate within budget; best-effort report written", file=sys.stderr)
    return EXIT_BUDGET


# ---- verify / plot ---------------------------------------------------------------


def _load_cert(args):
    doc = io.read(args.certificate)
    if doc.get("status") != "certified":
        raise UsageError("file does not hold a certificate")
    inst_doc = io.read(args.instance) if args.instance else doc.get("instance")
    if inst_doc is None:
        raise UsageError("no instance given and none embedded in the certificate")
    ikind, obj = io.load_instance(inst_doc)
    cert = io.cert_from_json(doc["kind"], doc["certificate"])
    return doc, ikind, obj, cert


def _verdict(kind, ikind, obj, cert) -> Verdict:
    if kind == "tverberg":
        if ikind != "tverberg":
            return Verdict(False, "tverberg certificate needs a tverberg instance")
        return verify_tv(cert, obj)
    if ikind == "tverberg":
        return Verdict(False, "transversal certificate needs a measures instance")
    _, _, measures = obj
    if kind == "flag":
        return verify_flag(cert, measures)
    return verify_transversal(cert, measures, "complex-plus-line" if kind == "odd-transversal" else "complex")


def cmd_verify(args) -> int:
    doc, ikind, obj, cert = _load_cert(args)
    v = _verdict(doc["kind"], ikind, obj, cert)
    _emit(args, io.dumps({"ok": v.ok, "reason": v.reason, "kind": doc["kind"]}))
    if not v.ok:
        print(f"verification failed: {v.reason}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_plot(args) -> int:
    from . import plot
    doc, ikind, obj, cert = _load_cert(args)
    if args.recheck:
        v = _verdict(doc["kind"], ikind, obj, cert)
        if not v.ok:
            print(f"verification failed: {v.reason}", file=sys.stderr)
            return EXIT_INPUT
    if doc["kind"] == "tverberg":
        svg = plot.plot_tverberg(cert, obj)
    elif doc["kind"] == "flag":
        raise UsageError("plotting flag certificates is not supported")
    else:
        svg = plot.plot_transversal(cert, obj[2])
    _emit(args, svg)
    return EXIT_OK


# ---- algebra -------------------------------------------------------------------------


def cmd_cohomology(args) -> int:
    op = args.op
    if op == "ideal":
        out = {"k": args.k, "d": args.d, "generators": [g.to_json() for g in C.presentation_ideal(args.k, args.d, args.p)]}
    elif op == "euler-power":
        ok, cls = C.euler_power_nonvanishing(args.n, args.d, args.m, args.p or 2)
        out = {"n": args.n, "d": args.d, "m": args.m, "p": args.p or 2, "nonvanishing": ok, "class": cls.to_json()}
    elif op == "splitting":
        R = C.chern_ring(args.k, args.p)
        if args.terms:
            f = R.zero()
            for exps, c in json.loads(args.terms):
                f = f + R.monomial(exps, int(Fraction(c)))
        elif args.chern is not None:
            f = R.gen(args.chern - 1) if args.chern else R.one()
        else:
            raise UsageError("splitting needs --terms or --chern")
        out = {"input": f.to_json(), "pullback": C.splitting_pullback(f).to_json()}
    else:
        ok = C.projectivization_nonvanishing(args.n, args.d, args.m)
        out = {"n": args.n, "d": args.d, "m": args.m, "nonvanishing": ok}
    _emit(args, io.dumps(out))
    return EXIT_OK


def cmd_fh(args) -> int:
    rep = FH.key_term_survives(args.n, args.d, args.group, _ints(args.exponents), args.allow_out_of_hypothesis)
    _emit(args, io.dumps(rep.to_json()))
    return EXIT_OK if rep.contradiction_established else EXIT_BUDGET


def cmd_gadget(args) -> int:
    doc = generate_instance("gadget", args.d, args.k, seed=args.seed, genericity="gadget",
                            epsilon=Fraction(args.epsilon), battery=args.battery, construction=args.construction)
    _emit(args, io.dumps(doc))
    return EXIT_OK


def cmd_generate(args) -> int:
    doc = generate_instance(args.kind, args.d, args.k, _ints(args.sizes), args.seed, args.genericity,
                            _ints(args.r), args.variant, args.colorful, Fraction(args.epsilon), args.battery,
                            args.construction)
    _emit(args, io.dumps(doc))
    return EXIT_OK


# ---- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None, help="chart samples (default from CXTV_BUDGET)")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--recheck", action="store_true", help="re-verify certificates after serialization")
    common.add_argument("--out", default=None, help="output file (default: standard output)")

    p = argparse.ArgumentParser(prog="cxtv", description="Complex central transversals and Tverberg-Vrecica witnesses")
    sub = p.add_subparsers(dest="cmd", required=True)
    for name in ("transversal", "flag", "odd-transversal"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("instance")
        s.add_argument("--k", type=int, default=None, help="override k from the instance")
        s.set_defaults(func=lambda a, n=name: _run_search(a, n))
    for name in ("tverberg", "tverberg-colorful", "tverberg-odd"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("instance")
        s.set_defaults(func=lambda a, n=name: _run_search(a, n))

    s = sub.add_parser("cohomology", parents=[common])
    s.add_argument("op", choices=["ideal", "euler-power", "splitting", "projectivization"])
    for flag in ("--k", "--d", "--n", "--m", "--p", "--chern"):
        s.add_argument(flag, type=int, default=None)
    s.add_argument("--terms", default=None, help='JSON list [[exponents], "coef"] in c_1..c_k')
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("fh-index", parents=[common])
    s.add_argument("--group", choices=list(FH.GROUPS), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--exponents", default=None, help="comma-separated a_1..a_n (z2)")
    s.add_argument("--allow-out-of-hypothesis", action="store_true")
    s.set_defaults(func=cmd_fh)

    s = sub.add_parser("gadget", parents=[common])
    s.add_argument("--construction", choices=["tight-depth", "too-many-measures", "odd-exploratory"],
                   default="tight-depth")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--epsilon", default="1/16")
    s.add_argument("--battery", type=int, default=1)
    s.set_defaults(func=cmd_gadget)

    s = sub.add_parser("generate", parents=[common])
    s.add_argument("--kind", choices=["measures", "tverberg", "gadget"], required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--sizes", default=None)
    s.add_argument("--r", default=None)
    s.add_argument("--variant", choices=["complex", "complex-plus-line"], default="complex")
    s.add_argument("--colorful", action="store_true")
    s.add_argument("--genericity", choices=list(GENERICITY), default="generic")
    s.add_argument("--epsilon", default="1/16")
    s.add_argument("--battery", type=int, default=1)
    s.add_argument("--construction", default="tight-depth")
    s.set_defaults(func=cmd_generate)

    for name, fn in (("verify", cmd_verify), ("plot", cmd_plot)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("certificate")
        s.add_argument("--instance", default=None)
        s.set_defaults(func=fn)
    return p


def _check_cohomology_args(args):
    need = {"ideal": ("k", "d"), "euler-power": ("n", "d", "m"), "splitting": ("k",),
            "projectivization": ("n", "d", "m")}[args.op]
    missing = [f"--{x}" for x in need if getattr(args, x) is None]
    if missing:
        raise UsageError(f"cohomology {args.op} needs {', '.join(missing)}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.cmd == "cohomology":
            _check_cohomology_args(args)
        return args.func(args)
    except (CxtvError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
