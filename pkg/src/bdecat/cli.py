"""Command-line front end.

Exit codes: 0 success or verified, 1 verification failure (a theorem check
did not hold), 2 input or usage error.  All numeric output is exact.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .cfk2cfd import A2NonZero, Mismatch, build_cfd, verify_a1, verify_a2_zero
from .diagram import (TheoremViolation, cfd_class_from_determinants,
                      enumerated_class, homology_kernel, intersection_matrix,
                      verify_cfdker)
from .dmodules import box_tensor, check_ainf, check_type_d, is_bounded
from .grading import default_refinement, gr_prime, m_of
from .grothendieck import class_of, euler_of_complex, normalize_symmetric, pair, substitute
from .pmc import NAMED_PMCS, PointedMatchedCircle
from .satellite import FormulaMismatch, check_satellite_formula, decompose
from .strands import basis_of_AZ, left_right_pairs
from .torus import check_bigrading

VERIFY_FAIL = (Mismatch, A2NonZero, FormulaMismatch, TheoremViolation)


def _load_pmc(spec: str) -> PointedMatchedCircle:
    if spec in NAMED_PMCS:
        return NAMED_PMCS[spec]()
    return serialize.pmc_from_json(serialize.load_file(spec))


def cmd_algebra(args) -> int:
    pmc = _load_pmc(args.pmc)
    basis = basis_of_AZ(pmc, args.summand)
    ref = default_refinement(pmc) if args.summand == 0 else None
    rows = []
    for el in basis:
        s, t = left_right_pairs(pmc, el)
        row = {
            "element": str(el),
            "left": sorted(s),
            "right": sorted(t),
        }
        if args.gradings:
            g = gr_prime(el)
            row["gr"] = str(g)
            if ref is not None:
                row["m"] = m_of(el, pmc, ref)
        rows.append(row)
    if args.json:
        print(serialize.dumps({"pmc": serialize.pmc_to_json(pmc),
                               "summand": args.summand,
                               "dimension": len(basis), "basis": rows}), end="")
    else:
        print(f"A(Z, {args.summand}) has dimension {len(basis)}")
        for row in rows:
            line = f"  {row['element']}   I{row['left']} -> I{row['right']}"
            if args.gradings:
                line += f"   gr'={row['gr']}"
                if "m" in row:
                    line += f"   m={row['m']}"
            print(line)
    return 0


def _load_module(path: str):
    data = serialize.load_file(path)
    kind = serialize.sniff_kind(data)
    if kind == "typed":
        return "typed", serialize.type_d_from_json(data)
    if kind == "pattern":
        return "ainf", serialize.pattern_from_json(data).cfa
    raise serialize.FixtureError(f"{path}: expected a module fixture")


def cmd_k0(args) -> int:
    kind, module = _load_module(args.module)
    if kind == "typed":
        check_type_d(module)
    else:
        check_ainf(module)
    cls = class_of(module)
    if args.json:
        print(serialize.dumps({"kind": kind,
                               "class": serialize.class_to_json(cls)}), end="")
    else:
        print(f"[{kind} module] = {cls}")
    return 0


def cmd_pair(args) -> int:
    pc = serialize.pattern_from_json(serialize.load_file(args.cfa))
    N = serialize.type_d_from_json(serialize.load_file(args.cfd))
    check_ainf(pc.cfa)
    check_type_d(N)
    w = args.weight if args.weight is not None else 1
    product = pair(class_of(pc.cfa), substitute(class_of(N), w))
    report = {"pairing": serialize.laurent_to_json(product),
              "weight": w,
              "normalization": "none; the pairing is compared exactly"}
    code = 0
    if args.box:
        complex_ = box_tensor(pc.cfa, N, weight=w)
        chi = euler_of_complex(complex_)
        report["euler"] = serialize.laurent_to_json(chi)
        report["equal"] = chi == product
        code = 0 if chi == product else 1
    if args.json:
        print(serialize.dumps(report), end="")
    else:
        print(f"[M].[N] (weight {w}) = {product}")
        if args.box:
            print(f"chi(M box N)       = {chi}")
            print("verdict:", "OK" if code == 0 else "MISMATCH")
    return code


def cmd_cfd_from_cfk(args) -> int:
    cfk = serialize.cfk_from_json(serialize.load_file(args.cfk))
    cfd = build_cfd(cfk)
    delta_a1 = verify_a1(cfd, cfk)
    verify_a2_zero(cfd)
    if args.json:
        out = serialize.type_d_to_json(cfd)
        out["class"] = serialize.class_to_json(class_of(cfd))
        out["alexander_polynomial"] = serialize.laurent_to_json(delta_a1)
        out["bounded"] = is_bounded(cfd)
        print(serialize.dumps(out), end="")
    else:
        print(f"CFD has {len(cfd.generators)} generators "
              f"({sum(1 for g in cfd.generators.values() if g.idempotent == frozenset({1}))} iota0)")
        for src, coeff, dst in cfd.delta:
            print(f"  {src} --{serialize.dump_coefficient(cfd.pmc, coeff)}--> {dst}")
        print(f"[CFD] = {class_of(cfd)}")
        print(f"a1 component = Delta_K(t) = {delta_a1}   (a2 component = 0)")
        print(f"bounded: {is_bounded(cfd)}")
    return 0


def cmd_satellite(args) -> int:
    from bdecat.satellite import satellite_polynomial
    from bdecat.grothendieck import normalize_symmetric

    pc = serialize.pattern_from_json(serialize.load_file(args.cfa))
    cfk = serialize.cfk_from_json(serialize.load_file(args.cfk))
    if args.winding is not None:
        pc.winding = args.winding
    check_ainf(pc.cfa)
    q, p = decompose(pc)
    cfd = build_cfd(cfk)
    delta_k = verify_a1(cfd, cfk)
    lhs = satellite_polynomial(pc, cfk)
    rhs = normalize_symmetric(q * substitute(delta_k, pc.winding))
    check_satellite_formula(pc, cfk)
    if args.json:
        print(serialize.dumps({
            "Q": serialize.laurent_to_json(q),
            "P": serialize.laurent_to_json(p),
            "Delta_K": serialize.laurent_to_json(delta_k),
            "winding": pc.winding,
            "pairing": serialize.laurent_to_json(lhs.poly),
            "satellite": serialize.laurent_to_json(rhs.poly),
            "symmetric": lhs.symmetric,
            "verdict": "OK",
            "normalization": "symmetric representative with q(1) >= 0",
        }), end="")
    else:
        print(f"pattern class:  Q = {q},  P = {p},  winding k = {pc.winding}")
        print(f"companion:      Delta_K(t) = {delta_k}")
        print(f"left side:      [CFA] . [CFD, k]        = {lhs.poly}")
        print(f"right side:     Delta_UC(t) Delta_K(t^k) = {rhs.poly}")
        print("normalization:  symmetric representative with q(1) >= 0")
        if args.report:
            print("a2 component of the companion class is zero; "
                  "P never contributes to the satellite polynomial")
        print("verdict: OK")
    return 0


def cmd_diagram_kernel(args) -> int:
    d = serialize.diagram_from_json(serialize.load_file(args.diagram))
    hk = verify_cfdker(d)
    cls = cfd_class_from_determinants(d)
    enum = enumerated_class(d)
    report = {
        "matrix": intersection_matrix(d),
        "determinant_class": serialize.class_to_json(cls),
        "cfd_class": serialize.class_to_json(enum),
        "b1_rel": hk.b1_rel,
        "order": "infinite" if hk.order is None else hk.order,
        "kernel_wedge": serialize.class_to_json(hk.kernel_wedge),
        "verdict": "OK",
        "normalization": "classes compared componentwise up to one global sign",
    }
    if args.json:
        print(serialize.dumps(report), end="")
    else:
        print("M(H) =")
        for row in report["matrix"]:
            print("   ", row)
        print(f"subset determinants: {cls}")
        print(f"[CFD(H)]           : {enum}")
        print(f"b1(Y, dY) = {hk.b1_rel},  |H1(Y, dY)| = {report['order']}")
        print(f"kernel wedge = {hk.kernel_wedge}")
        print("verdict: OK (span [CFD] = |H1| * Lambda^k ker, up to one sign)")
    return 0


def _selftest(args) -> int:
    from .selfcheck import run_selfcheck
    failures = run_selfcheck(verbose=not args.json)
    if args.json:
        print(serialize.dumps({"failures": failures,
                               "verdict": "OK" if not failures else "FAIL"}),
              end="")
    return 0 if not failures else 1


def cmd_check(args) -> int:
    if args.selftest:
        return _selftest(args)
    if args.sign_report:
        from .diagram import az_sign_report
        pmc = _load_pmc(args.pmc)
        rep = az_sign_report(pmc)
        if args.json:
            print(serialize.dumps(rep), end="")
        else:
            print(f"sign grading report for {args.pmc}:")
            for key, value in rep.items():
                print(f"  {key}: {value}")
            print("  (absolute signs of non-product chord elements are a "
                  "gauge choice; relations are reported, not asserted)")
        return 0
    if not args.fixture:
        print("check: need a fixture file, --selftest, or --sign-report",
              file=sys.stderr)
        return 2
    data = serialize.load_file(args.fixture)
    kind = args.kind or serialize.sniff_kind(data)
    obj = serialize.KIND_LOADERS[kind](data)
    if kind == "typed":
        check_type_d(obj)
        if obj.pmc == NAMED_PMCS["torus"]() and args.framing is not None:
            check_bigrading(obj, args.framing)
    elif kind in ("ainf", "pattern"):
        check_ainf(obj.cfa if kind == "pattern" else obj)
    elif kind == "cfk":
        build_cfd(obj)
    elif kind == "diagram":
        verify_cfdker(obj)
    print(f"{args.fixture}: valid {kind} fixture")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bdecat",
        description="decategorified bordered Heegaard Floer invariants")
    ap.add_argument("--parallel", action="store_true",
                    help="accepted for compatibility; evaluation is sequential")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", help="basis and gradings of A(Z, i)")
    p.add_argument("--pmc", default="torus",
                   help="named pmc (torus, split2, split3) or a JSON file")
    p.add_argument("--summand", type=int, default=0)
    p.add_argument("--gradings", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("k0", help="K0 class of a module fixture")
    p.add_argument("module")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_k0)

    p = sub.add_parser("pair", help="pair an A-infinity module with a type D structure")
    p.add_argument("cfa")
    p.add_argument("cfd")
    p.add_argument("--weight", type=int, default=None,
                   help="Alexander weight on the type D side (default 1)")
    p.add_argument("--box", action="store_true",
                   help="also form the box tensor complex and compare Euler characteristics")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("cfd-from-cfk", help="build CFD(S^3 \\ K, 0) from CFK data")
    p.add_argument("cfk")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cfd_from_cfk)

    p = sub.add_parser("satellite", help="check the satellite Alexander formula")
    p.add_argument("cfa")
    p.add_argument("cfk")
    p.add_argument("--winding", type=int, default=None)
    p.add_argument("--report", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_satellite)

    p = sub.add_parser("diagram-kernel",
                       help="intersection matrix, [CFD], and the kernel theorem")
    p.add_argument("diagram")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_diagram_kernel)

    p = sub.add_parser("check", help="validate a fixture file or run the selftest")
    p.add_argument("fixture", nargs="?")
    p.add_argument("--kind", choices=sorted(serialize.KIND_LOADERS))
    p.add_argument("--framing", type=int, default=0,
                   help="framing for torus bigrading checks")
    p.add_argument("--selftest", action="store_true",
                   help="exhaustive algebra checks on the torus and split genus-2 circles")
    p.add_argument("--sign-report", action="store_true",
                   help="compare the intersection-sign grading with m (report only)")
    p.add_argument("--pmc", default="torus",
                   help="circle for --sign-report")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)
    return ap


def run(argv) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except VERIFY_FAIL as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
