"""Command-line front end.

    sl2slice alexander KNOT.json
    sl2slice homology --n N [--unbranched] KNOT.json
    sl2slice dihedral KNOT.json
    sl2slice phi --n N [--k K] --rep REP.json
    sl2slice riley KNOT.json
    sl2slice pretzel KNOT.json
    sl2slice verify --rep REP.json

Every verb accepts ``--tol`` (relator tolerance) and ``--json FILE`` (write a
machine-readable report).  Exit status: 0 success, 1 a verification failed,
2 unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable

from . import exactlin, reps, twobridge
from .errors import ComputationError, SchemaError, SliceMismatchError, Sl2SliceError
from .knotdata import KnotData, load_knot, load_rep, rep_to_dict
from .pretzel import surjectivity_report
from .registry import fox_alexander
from .sl2 import EPS_REL, Sl2

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class VerificationFailed(Exception):
    pass


def fmt_real(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def fmt_complex(z: complex) -> str:
    z = complex(z)
    re, im = fmt_real(z.real), fmt_real(abs(z.imag))
    sign = "-" if z.imag < 0 and im != "0" else "+"
    return f"{re}{sign}{im}i"


def fmt_matrix(A: Sl2) -> str:
    return f"[[{fmt_complex(A.a)}, {fmt_complex(A.b)}], [{fmt_complex(A.c)}, {fmt_complex(A.d)}]]"


def _need(knot: KnotData, kind: str, verb: str):
    if knot.kind != kind:
        raise SchemaError(f"'{verb}' needs {kind} knot data, got {knot.kind}")


def cmd_alexander(args, out: list[str]) -> dict:
    knot = load_knot(args.input)
    if knot.kind == "lin":
        raw = exactlin.alexander_polynomial(knot.lin.V, knot.lin.U)
    elif knot.kind == "twobridge":
        raw = fox_alexander(knot.twobridge.word)
    else:
        raise SchemaError("'alexander' needs lin or twobridge knot data")
    norm = raw.normalized()
    at_m1, at_1 = norm(-1), norm(1)
    out.append(f"Delta = {norm}; Delta(-1) = {at_m1}; Delta(1) = {at_1}")
    if knot.kind == "lin":
        out.append(f"raw det(tU - V) = {raw}")
    return {"raw": str(raw), "normalized": str(norm), "at_minus_one": at_m1, "at_one": at_1}


def cmd_homology(args, out: list[str]) -> dict:
    knot = load_knot(args.input)
    _need(knot, "lin", "homology")
    if args.unbranched:
        inv = exactlin.cyclic_cover_homology(knot.lin.V, knot.lin.U, args.n)
        space = f"C_{args.n}"
    else:
        inv = exactlin.branched_cover_homology(knot.lin.V, knot.lin.U, args.n)
        space = f"Sigma_{args.n}"
    out.append(f"H_1({space}) = {inv}")
    return {"space": space, "torsion": list(inv.torsion), "free_rank": inv.free_rank, "order": inv.order}


def cmd_dihedral(args, out: list[str]) -> dict:
    knot = load_knot(args.input)
    _need(knot, "lin", "dihedral")
    en = reps.enumerate_dihedral(knot.lin)
    out.append(f"solutions: {len(en.solutions)}")
    out.append(f"nontrivial classes: {en.class_count}")
    for s in en.solutions:
        out.append(f"  class {s.class_id}: theta = ({', '.join(str(t) for t in s.theta)})")
    serialized = []
    for cid, rep in enumerate(en.representations):
        rr = rep.verify(args.tol)
        out.append(f"class {cid} representation residual {rr.max_residual:.3e}")
        if not rr.ok:
            raise VerificationFailed(f"class {cid} representation fails its relators")
        serialized.append(rep_to_dict(rep, knot.raw))
    return {
        "solutions": [[str(t) for t in s.theta] + [s.class_id] for s in en.solutions],
        "class_count": en.class_count,
        "representations": serialized,
    }


def _verify_report(rep: reps.Representation, tol: float, out: list[str]) -> dict:
    rr = rep.verify(tol)
    labels = rep.presentation
    for i, (r, res) in enumerate(zip(labels.relators, rr.per_relator), 1):
        out.append(f"  relator {i}: {labels.format(r)}  residual {res:.3e}")
    out.append(f"max residual {rr.max_residual:.3e} ({'ok' if rr.ok else 'FAIL'} at tol {tol:g})")
    return {"per_relator": list(rr.per_relator), "max_residual": rr.max_residual, "ok": rr.ok}


def cmd_verify(args, out: list[str]) -> dict:
    rep, knot = load_rep(args.rep)
    report = {"residuals": _verify_report(rep, args.tol, out)}
    irr = reps.is_irreducible(rep)
    flags = {"irreducible": irr}
    out.append(f"irreducible: {'yes' if irr else 'no'}")
    if rep.presentation.abelianization is not None:
        meta = reps.is_metabelian(rep)
        flags["metabelian"] = meta
        out.append(f"metabelian: {'yes' if meta else 'no'}")
    if rep.presentation.meridian is not None:
        c = reps.slice_trace(rep)
        flags["slice_trace"] = [c.real, c.imag]
        out.append(f"slice trace: {fmt_complex(c)}")
    report["flags"] = flags
    if not report["residuals"]["ok"]:
        raise VerificationFailed("representation does not satisfy its relators")
    return report


def cmd_phi(args, out: list[str]) -> dict:
    rep, knot = load_rep(args.rep)
    _need(knot, "lin", "phi")
    if not rep.verify(args.tol).ok:
        raise VerificationFailed("input representation does not satisfy its relators")
    try:
        lifted = reps.phi_n(rep, args.n, args.k, tol=args.tol)
    except SliceMismatchError as exc:
        raise VerificationFailed(str(exc)) from None
    out.append(f"lift to Sigma_{args.n}:")
    report = {"residuals": _verify_report(lifted, 10 * args.tol, out)}
    C = reps.tau_equivariance(lifted, args.tol)
    if C is None:
        out.append("equivariance certificate: none")
        raise VerificationFailed("lifted representation is not tau-equivariant")
    res = reps.equivariance_residual(lifted, C)
    out.append(f"equivariance certificate C = {fmt_matrix(C)} (residual {res:.3e})")
    report["certificate"] = [[z.real, z.imag] for z in (C.a, C.b, C.c, C.d)]
    report["representation"] = rep_to_dict(lifted, knot.raw, args.n)
    return report


def cmd_riley(args, out: list[str]) -> dict:
    knot = load_knot(args.input)
    _need(knot, "twobridge", "riley")
    K = knot.twobridge
    rep = twobridge.factorization_check(K)
    ok = rep.ok()
    out.append(f"phi(-1,u) = {rep.polynomial}; roots match closed form: {'OK' if ok else 'MISMATCH'}")
    out.append(f"p = {rep.p}")
    out.append("roots:       " + ", ".join(fmt_complex(z) for z in rep.roots))
    out.append("closed form: " + ", ".join(fmt_real(x) for x in sorted(rep.closed_form)))
    out.append(f"max defect {rep.max_defect:.3e}, coefficient error {rep.coefficient_error:.3e}")
    if not ok:
        raise VerificationFailed("Riley polynomial does not factor as the closed form predicts")
    return {
        "polynomial": rep.polynomial.integer_coefficients(),
        "p": rep.p,
        "roots": [[z.real, z.imag] for z in rep.roots],
        "closed_form": list(rep.closed_form),
        "max_defect": rep.max_defect,
        "coefficient_error": rep.coefficient_error,
        "ok": ok,
    }


def cmd_pretzel(args, out: list[str]) -> dict:
    knot = load_knot(args.input)
    _need(knot, "pretzel", "pretzel")
    G = knot.brieskorn
    rep = surjectivity_report(G.p, G.q, G.r, tol=min(args.tol, 1e-9))
    out.append(rep.table())
    s = rep.summary()
    out.append(
        f"admissible {s['admissible']}, irreducible {s['irreducible']}, certified {s['certified']}, "
        f"distinct characters {s['distinct_characters']}"
    )
    out.append(f"every irreducible representation is equivariant: {'yes' if rep.ok else 'NO'}")
    if not rep.ok:
        raise VerificationFailed("some irreducible representation lacks an equivariance certificate")
    return json.loads(rep.to_json())


COMMANDS: dict[str, Callable] = {
    "alexander": cmd_alexander,
    "homology": cmd_homology,
    "dihedral": cmd_dihedral,
    "phi": cmd_phi,
    "riley": cmd_riley,
    "pretzel": cmd_pretzel,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sl2slice", description="SL2(C) slice computations for knots")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=EPS_REL, help="relator residual tolerance")
    common.add_argument("--json", metavar="FILE", help="also write the report as JSON")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in ("alexander", "dihedral", "riley", "pretzel"):
        sub.add_parser(verb, parents=[common]).add_argument("input")
    h = sub.add_parser("homology", parents=[common])
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--unbranched", action="store_true")
    h.add_argument("input")
    ph = sub.add_parser("phi", parents=[common])
    ph.add_argument("--n", type=int, required=True)
    ph.add_argument("--k", type=int)
    ph.add_argument("--rep", required=True)
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--rep", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out: list[str] = []
    code = EXIT_OK
    report: dict = {}
    try:
        report = COMMANDS[args.verb](args, out)
    except VerificationFailed as exc:
        out.append(f"verification failed: {exc}")
        report = {"error": str(exc)}
        code = EXIT_FAIL
    except ComputationError as exc:
        out.append(f"internal check failed: {exc}")
        report = {"error": str(exc)}
        code = EXIT_FAIL
    except (OSError, ValueError, LookupError, Sl2SliceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print("\n".join(out))
    if args.json:
        report = {"verb": args.verb, "exit_code": code, **report}
        Path(args.json).write_text(json.dumps(report, indent=2, default=str) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
