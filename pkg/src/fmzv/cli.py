"""Command-line front end.

Every computation is exposed with deterministic, machine-readable output:
text (default), JSON (schema-stable, carrying a schema_version field) or
CSV where a matrix is concerned.  Long-running verifications report
progress on stderr; results go to stdout only.  Exit codes: 0 success,
1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import doubleshuffle as ds
from . import goncharov as gon
from . import levelmatrix as lm
from . import oddmodel as om
from . import words as wd
from .exact import Q, det_exact, two_adic_certificate

SCHEMA_VERSION = "1"


def _budget(default: int) -> int:
    raw = os.environ.get("FMZV_MAX_WEIGHT")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(2)


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _guess_alphabet(text: str) -> str:
    t = text.strip()
    if t.startswith("y"):
        return "Y"
    if t.startswith("s"):
        return "S"
    return "X"


def _emit_poly(p: wd.NCPoly, fmt: str) -> None:
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, **wd.poly_to_json_obj(p)}
        print(json.dumps(doc, sort_keys=True))
    else:
        print(str(p))


def _emit_tensor(t: wd.Tensor2, left_alphabet: str, right_alphabet: str,
                 fmt: str) -> None:
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION,
               **wd.tensor_to_json_obj(t, left_alphabet, right_alphabet)}
        print(json.dumps(doc, sort_keys=True))
    else:
        print(str(t))


def _cmd_product(args) -> int:
    if args.op == "shuffle":
        alphabet = _guess_alphabet(args.w1)
        u = wd.parse_word(alphabet, args.w1)
        v = wd.parse_word(alphabet, args.w2)
        _emit_poly(wd.shuffle(u, v), args.format)
    else:
        u = wd.parse_word("Y", args.w1)
        v = wd.parse_word("Y", args.w2)
        _emit_poly(wd.stuffle(u, v), args.format)
    return 0


def _cmd_coproduct(args) -> int:
    if args.op == "gon":
        w = wd.parse_word("X", args.word)
        _emit_tensor(gon.gon_coproduct(w), "X", "X", args.format)
    elif args.op == "dec":
        w = wd.parse_word(_guess_alphabet(args.word), args.word)
        _emit_tensor(wd.deconcat(w), w.alphabet, w.alphabet, args.format)
    else:  # dual-stuffle
        w = wd.parse_word("Y", args.word)
        _emit_tensor(wd.dual_coproduct(w, wd.STUFFLE), "Y", "Y", args.format)
    return 0


def _cmd_derivation(args) -> int:
    w = wd.parse_word("X", args.word)
    p = wd.NCPoly.from_word(w)
    if args.mode == "partial":
        t = gon.partial_2r1(w, args.r)
    else:
        t = gon.derivation_D(p, args.r)
    _emit_tensor(t, "X", "X", args.format)
    return 0


def _cmd_matrix(args) -> int:
    cap = _budget(16)
    if args.N > cap:
        _progress(f"weight {args.N} exceeds the cap {cap} (FMZV_MAX_WEIGHT)")
        return 2
    m = lm.build_matrix(args.N, args.level)
    basis = [lm.format_word23(u) for u in lm.enumerate_basis(args.N, args.level).elements]
    codomain = [lm.format_word23(u) for u in lm.enumerate_codomain(args.N, args.level)]
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "N": args.N,
            "level": args.level,
            "rows": basis,
            "cols": codomain,
            "entries": [[str(x) for x in m.row(i)] for i in range(m.rows)],
        }
        if args.det:
            doc["det"] = str(det_exact(m))
        if args.two_adic:
            doc["two_adic_certificate"] = two_adic_certificate(m)
        print(json.dumps(doc, sort_keys=True))
    else:
        print("rows: " + " ".join(basis))
        print("cols: " + " ".join(codomain))
        print(m.to_csv())
        if args.det:
            print(f"det = {det_exact(m)}")
        if args.two_adic:
            print(f"two_adic_certificate = {two_adic_certificate(m)}")
    return 0


def _cmd_dm(args) -> int:
    _progress(f"solving the double shuffle conditions in weight {args.weight}")
    basis = ds.dm_basis(args.weight)
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "weight": args.weight,
               "dimension": len(basis),
               "basis": [wd.poly_to_json_obj(p) for p in basis]}
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"dim dm_{args.weight} = {len(basis)}")
        for p in basis:
            print(str(p))
    return 0


def _cmd_dims(args) -> int:
    cap = _budget(9)
    top = min(args.max_weight, cap)
    if top < args.max_weight:
        _progress(f"capping at weight {top} (FMZV_MAX_WEIGHT)")
    ref = [1, 0, 1]
    while len(ref) <= top:
        ref.append(ref[-2] + ref[-3])
    rows = []
    for n in range(top + 1):
        _progress(f"reducing weight {n}")
        rows.append((n, ds.zf_dim(n), ref[n]))
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION,
               "dims": [{"weight": n, "dim": d, "reference": r}
                        for n, d, r in rows]}
        print(json.dumps(doc, sort_keys=True))
    else:
        print("weight,dim,reference")
        for n, d, r in rows:
            print(f"{n},{d},{r}")
    return 0


def _cmd_reduce(args) -> int:
    cap = _budget(9)
    if args.weight > cap:
        _progress(f"weight {args.weight} exceeds the cap {cap} (FMZV_MAX_WEIGHT)")
        return 2
    p = wd.parse_poly("X", args.poly)
    _emit_poly(ds.zf_reduce(p, args.weight), args.format)
    return 0


def _cmd_oddmodel(args) -> int:
    if args.kernel:
        if args.weight is None:
            _progress("--kernel requires --weight")
            return 2
        basis = om.uf_kernel(args.weight)
        if args.format == "json":
            doc = {"schema_version": SCHEMA_VERSION, "weight": args.weight,
                   "dimension": len(basis),
                   "kernel": [str(e) for e in basis]}
            print(json.dumps(doc, sort_keys=True))
        else:
            print(f"dim ker = {len(basis)}")
            for e in basis:
                print(str(e))
        return 0
    if args.dims:
        if args.max_weight is None:
            _progress("--dims requires --max-weight")
            return 2
        dims = om.uf_dims(args.max_weight)
        ref = [1, 0, 1]
        while len(ref) <= args.max_weight:
            ref.append(ref[-2] + ref[-3])
        if args.format == "json":
            doc = {"schema_version": SCHEMA_VERSION,
                   "dims": [{"weight": n, "dim": d, "reference": ref[n]}
                            for n, d in enumerate(dims)]}
            print(json.dumps(doc, sort_keys=True))
        else:
            print("weight,dim,reference")
            for n, d in enumerate(dims):
                print(f"{n},{d},{ref[n]}")
        return 0
    _progress("oddmodel requires --kernel or --dims")
    return 2


def _cmd_coeffs(args) -> int:
    if args.r is not None:
        print(str(lm.c_coeff(args.a, args.b, args.r)))
    else:
        print(str(lm.c_ab(args.a, args.b)))
    return 0


def _cmd_verify(args) -> int:
    suite = args.suite
    ok = True
    if suite == "zagier":
        cap = _budget(9)
        for n in range(3, cap + 1, 2):
            for a in range((n - 3) // 2 + 1):
                b = (n - 3) // 2 - a
                _progress(f"zagier a={a} b={b} (weight {n})")
                good = ds.verify_formal_zagier(a, b)
                print(f"zagier a={a} b={b}: {'ok' if good else 'FAIL'}")
                ok = ok and good
    elif suite == "euler":
        p = wd.parse_poly("X", "x0x1x1 - x0x0x1")
        good = ds.zf_reduce(p, 3).is_zero()
        print(f"euler: {'ok' if good else 'FAIL'}")
        ok = good
    elif suite == "level-one":
        cap = _budget(9)
        for n in range(1, (cap - 1) // 2 + 1):
            _progress(f"level-one n={n}")
            good = ds.verify_level_one_identity(n)
            print(f"level-one n={n}: {'ok' if good else 'FAIL'}")
            ok = ok and good
    elif suite == "c-lemma":
        ok = lm.verify_c_lemma(10)
        print(f"c-lemma: {'ok' if ok else 'FAIL'}")
    elif suite == "binomial":
        ok = lm.verify_binomial_identity(8)
        print(f"binomial: {'ok' if ok else 'FAIL'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fmzv",
        description="exact computations in the word algebras of formal "
                    "multiple zeta values")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("product", help="shuffle or stuffle product of two words")
    p.add_argument("--op", choices=["shuffle", "stuffle"], required=True)
    p.add_argument("w1")
    p.add_argument("w2")
    add_format(p)
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("coproduct", help="coproduct of a word")
    p.add_argument("--op", choices=["gon", "dec", "dual-stuffle"], required=True)
    p.add_argument("word")
    add_format(p)
    p.set_defaults(func=_cmd_coproduct)

    p = sub.add_parser("derivation", help="strict-subword or derivation component")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--mode", choices=["D", "partial"], default="D")
    p.add_argument("word")
    add_format(p)
    p.set_defaults(func=_cmd_derivation)

    p = sub.add_parser("matrix", help="level-lowering matrix")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--det", action="store_true")
    p.add_argument("--two-adic", dest="two_adic", action="store_true")
    add_format(p)
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("dm", help="double shuffle Lie algebra basis")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_dm)

    p = sub.add_parser("dims", help="formal zeta dimension table")
    p.add_argument("--max-weight", dest="max_weight", type=int, required=True)
    add_format(p)
    p.set_defaults(func=_cmd_dims)

    p = sub.add_parser("reduce", help="canonical form modulo double shuffle")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("poly")
    add_format(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("oddmodel", help="odd-generator model computations")
    p.add_argument("--kernel", action="store_true")
    p.add_argument("--dims", action="store_true")
    p.add_argument("--weight", type=int)
    p.add_argument("--max-weight", dest="max_weight", type=int)
    add_format(p)
    p.set_defaults(func=_cmd_oddmodel)

    p = sub.add_parser("coeffs", help="Zagier coefficients")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--r", type=int)
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("verify", help="run one verification suite")
    p.add_argument("--suite", required=True,
                   choices=["zagier", "euler", "level-one", "c-lemma", "binomial"])
    p.set_defaults(func=_cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
