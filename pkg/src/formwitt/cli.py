"""formwitt command line: JSON on stdout, diagnostics on stderr.

Exit codes: 0 success, 1 usage or input error, 2 Unknown / search bound
exceeded, 3 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .clifford import even_clifford, is_split, rank2_springer
from .descent import descend_semilocal, represents_descend, springer
from .errors import FormwittError
from .forms import (
    QuadraticForm,
    Vector,
    base_change,
    format_form,
    is_nonsingular,
    is_regular,
    parse_form,
    parse_vector,
    radical,
)
from .lifting import LiftProblem, lift_isotropic
from .rings import QuotientAlgebra, parse_element, parse_polynomial, parse_ring
from .rings.grammar import format_polynomial, format_ring
from .witt import (
    Anisotropic,
    Isotropic,
    Unknown,
    find_isotropic,
    hyperbolic_complete,
    is_hyperbolic,
    is_isometric,
    represents,
    witt_decompose,
)

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN, EXIT_SELFTEST = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _vec(v: Vector) -> list:
    return v.to_strings()


def _matrix(R, M) -> list:
    return [[R.format(x) for x in row] for row in M]


def _verified(q: QuadraticForm, v: Vector, value=None):
    """Every witness is re-evaluated before it is emitted."""
    R = q.ring
    target = R.zero if value is None else value
    if q.value(v.v) != target:
        raise FormwittError(f"internal check failed: q({v}) != {R.format(target)}")
    return _vec(v)


def _ring(args):
    return parse_ring(args.ring)


def _form(R, text):
    return parse_form(R, text)


def _isotropy_json(q: QuadraticForm, res) -> dict:
    if isinstance(res, Isotropic):
        return {"status": "isotropic", "witness": _verified(q, res.witness), "certificate": list(res.certificate)}
    if isinstance(res, Anisotropic):
        out = {"status": "anisotropic", "certificate": res.certificate}
        if res.modulus is not None:
            out["modulus"] = res.modulus
        if res.detail:
            out["detail"] = res.detail
        return out
    return {"status": "unknown", "bound": res.bound}


def cmd_form_check(args):
    R = _ring(args)
    q = _form(R, args.form)
    rad = radical(q)
    return {
        "form": format_form(q),
        "ring": format_ring(R),
        "regular": is_regular(q),
        "nonsingular": is_nonsingular(q),
        "radical": [_vec(v) for v in rad],
    }, EXIT_OK


def cmd_isotropy(args):
    R = _ring(args)
    q = _form(R, args.form)
    res = find_isotropic(q, bound=args.bound)
    return _isotropy_json(q, res), EXIT_UNKNOWN if isinstance(res, Unknown) else EXIT_OK


def cmd_witt(args):
    R = _ring(args)
    q = _form(R, args.form)
    dec = witt_decompose(q, bound=args.bound)
    out = {
        "index": dec.index,
        "kernel": format_form(dec.kernel),
        "transform": _matrix(R, dec.transform),
        "pairs": [[[R.format(x) for x in u], [R.format(x) for x in v]] for u, v in dec.pairs],
    }
    if isinstance(dec.kernel_certificate, Unknown):
        out["kernel_status"] = "unknown"
        return out, EXIT_UNKNOWN
    return out, EXIT_OK


def cmd_hyperbolic(args):
    R = _ring(args)
    q = _form(R, args.form)
    if args.lagrangian:
        U = [parse_vector(R, s) for s in args.lagrangian]
    else:
        U = is_hyperbolic(q, bound=args.bound)
        if U is None:
            return {"hyperbolic": False}, EXIT_OK
    V, T = hyperbolic_complete(q, U)
    return {
        "hyperbolic": len(U) * 2 == q.rank,
        "lagrangian": [_verified(q, u) for u in U],
        "complement": [_verified(q, v) for v in V],
        "isometry": _matrix(R, T),
    }, EXIT_OK


def cmd_isometric(args):
    R = _ring(args)
    q1 = _form(R, args.form)
    q2 = _form(R, args.form2)
    iso = is_isometric(q1, q2, bound=args.bound)
    if iso is None:
        return {"isometric": False}, EXIT_OK
    out = {"isometric": True, "method": iso.method}
    if iso.matrix is not None:
        out["matrix"] = _matrix(R, iso.matrix)
    return out, EXIT_OK


def cmd_represents(args):
    R = _ring(args)
    q = _form(R, args.form)
    a = parse_element(R, args.value).value
    if args.ext:
        S = QuotientAlgebra(R, parse_polynomial(R, args.ext))
        if not args.witness:
            raise UsageError("--ext needs --witness (a vector over the extension)")
        x = parse_vector(S, args.witness)
        m = represents_descend(q, a, S, x)
        return {"represents": True, "vector": _verified(q, m, a), "branch": "descent"}, EXIT_OK
    m = represents(q, a, bound=args.bound)
    if m is None:
        return {"represents": False}, EXIT_OK
    return {"represents": True, "vector": _verified(q, m, a), "branch": "search"}, EXIT_OK


def cmd_clifford(args):
    R = _ring(args)
    q = _form(R, args.form)
    A = even_clifford(q)
    root = is_split(A)
    out = {"algebra": str(A), "split": root is not None}
    if root is not None:
        out["root"] = R.format(root.value)
        res = rank2_springer(q)
        out["isotropic_line"] = _verified(q, res.witness)
    return out, EXIT_OK


def cmd_descend(args):
    R = _ring(args)
    q = _form(R, args.form)
    S = QuotientAlgebra(R, parse_polynomial(R, args.ext))
    qS = base_change(q, S)
    if args.witness:
        z = parse_vector(S, args.witness)
        origin = "given"
    else:
        res = find_isotropic(qS, bound=args.bound)
        if isinstance(res, Unknown):
            return {"status": "unknown", "bound": res.bound}, EXIT_UNKNOWN
        if not isinstance(res, Isotropic):
            return {"status": "anisotropic", "over": "extension", "certificate": res.certificate}, EXIT_OK
        z = res.witness
        origin = "search"
    out = {"extension": format_ring(S), "extension_witness": _verified(qS, z), "extension_witness_origin": origin}
    if q.rank >= 3 and S.degree > 1:
        trace = descend_semilocal(q, S, z)
        w = trace.witness
        out["trace"] = [
            {"degree": s.degree, "modulus": format_polynomial(s.modulus), "next_modulus": format_polynomial(s.next_modulus)}
            for s in trace.steps
        ]
        out["degrees"] = trace.degrees
    else:
        w = springer(q, S, z)
        out["degrees"] = [S.degree, 1] if S.degree > 1 else [1]
    out["status"] = "isotropic"
    out["witness"] = _verified(q, w)
    return out, EXIT_OK


def cmd_lift(args):
    R = _ring(args)
    q = _form(R, args.form)
    data = R.residues()
    fields = [R] if R.is_field else [r.field for r in data]
    if len(args.target) != len(fields):
        raise UsageError(f"{R} has {len(fields)} residue fields; give one --target per field")
    targets = tuple(parse_vector(F, t) for F, t in zip(fields, args.target))
    res = lift_isotropic(LiftProblem(q, targets))
    return {
        "residue_fields": [format_ring(F) for F in fields],
        "witness": _verified(q, res.vector),
        "iterations": res.iterations,
        "bound": res.bound,
    }, EXIT_OK


def cmd_selftest(args):
    from .acceptance import run_all

    only = [int(x) for x in args.criteria.split(",")] if args.criteria else None
    results = run_all(quick=args.quick, only=only)
    for r in results:
        print(r.line(), file=sys.stderr)
    out = {
        "quick": args.quick,
        "criteria": [
            {"number": r.number, "title": r.title, "passed": r.passed, "checks": r.checked, "failures": r.failures}
            for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    if args.timing:
        for rec, r in zip(out["criteria"], results):
            rec["seconds"] = round(r.seconds, 3)
    return out, EXIT_OK if out["passed"] else EXIT_SELFTEST


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="formwitt", description="Quadratic forms over semilocal rings.")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds (breaks byte-stability)")
    p.add_argument("--seed", type=int, help="seed for randomized factorization (overrides FORMWITT_SEED)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, form=True):
        sp.add_argument("--ring", required=True, help='e.g. "GF(5)", "Q", "GF(3)[X]/(X^2)"')
        if form:
            sp.add_argument("--form", required=True, help='e.g. "rank=3;c[1][2]=1;c[3][3]=1"')
        sp.add_argument("--bound", type=int, default=10_000, help="search bound over Q")

    fp = sub.add_parser("form", help="form utilities")
    fsub = fp.add_subparsers(dest="form_command", required=True)
    fc = fsub.add_parser("check", help="regularity, nonsingularity and radical")
    common(fc)
    fc.set_defaults(fn=cmd_form_check)

    sp = sub.add_parser("isotropy", help="find an isotropic vector or certify anisotropy")
    common(sp)
    sp.set_defaults(fn=cmd_isotropy)

    sp = sub.add_parser("witt", help="Witt decomposition")
    common(sp)
    sp.set_defaults(fn=cmd_witt)

    sp = sub.add_parser("hyperbolic", help="Lagrangian and hyperbolic completion")
    common(sp)
    sp.add_argument("--lagrangian", action="append", help="totally isotropic vector (repeatable)")
    sp.set_defaults(fn=cmd_hyperbolic)

    sp = sub.add_parser("isometric", help="isometry test")
    common(sp)
    sp.add_argument("--form2", required=True)
    sp.set_defaults(fn=cmd_isometric)

    sp = sub.add_parser("represents", help="represent a value, optionally by descent from an extension")
    common(sp)
    sp.add_argument("--value", required=True)
    sp.add_argument("--ext", help="modulus P of S = R[X]/(P)")
    sp.add_argument("--witness", help="vector over S with q(x) = value")
    sp.set_defaults(fn=cmd_represents)

    sp = sub.add_parser("clifford", help="even Clifford algebra of a binary form")
    common(sp)
    sp.set_defaults(fn=cmd_clifford)

    sp = sub.add_parser("descend", help="odd-degree descent of an isotropic vector")
    common(sp)
    sp.add_argument("--ext", required=True, help="modulus P of S = R[X]/(P)")
    sp.add_argument("--witness", help="isotropic vector over S (searched for if omitted)")
    sp.set_defaults(fn=cmd_descend)

    sp = sub.add_parser("lift", help="lift residue isotropic vectors over an Artinian ring")
    common(sp)
    sp.add_argument("--target", action="append", required=True, help="residue vector, one per residue field")
    sp.set_defaults(fn=cmd_lift)

    sp = sub.add_parser("selftest", help="run the acceptance suite")
    sp.add_argument("--quick", action="store_true", help="reduced instance sets")
    sp.add_argument("--criteria", help="comma-separated criterion numbers")
    sp.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.seed is not None:
        os.environ["FORMWITT_SEED"] = str(args.seed)
    t0 = time.perf_counter()
    command = args.command + (f" {args.form_command}" if args.command == "form" else "")
    try:
        result, code = args.fn(args)
    except (UsageError, FormwittError, ValueError, ZeroDivisionError) as exc:
        print(f"formwitt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = {"schema": SCHEMA, "command": command, **result}
    if args.timing:
        payload["seconds"] = round(time.perf_counter() - t0, 6)
    print(json.dumps(payload, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
