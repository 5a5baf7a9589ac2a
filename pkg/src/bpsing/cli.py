"""Command-line entry point.

Machine-readable JSON (and CSV or DOT where applicable) goes to
stdout; human-readable progress and tables go to stderr.  Exit code 0
means every requested verification passed, 1 means a verification
failed, 2 means the arguments were unusable.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys

from .functor import build_ladder, check_recollement
from .grading import WeightSystem
from .linalg import DEFAULT_MODULUS
from .mforacle import oracle_hom
from .qalg import (
    coxeter_polynomial,
    dynkin_path_algebra,
    gamma_quiver,
    lambda_q,
    nakayama,
    replicated,
    tensor,
)
from .stable import StableObject, cuboid_objects, hom_dim, parse_object
from .tilting import UnknownHomError, family, glue, hom_matrix, hom_matrix_csv, predicted_cartan, same_family, verify_tilting

MAX_CUBOID = 512


def _weights(text: str, force: bool) -> WeightSystem:
    ws = WeightSystem(tuple(int(t) for t in text.split(",")))
    size = 1
    for w in ws.p:
        size *= w - 1
    if size > MAX_CUBOID and not force:
        raise SystemExit(f"cuboid size {size} exceeds the cap {MAX_CUBOID}; pass --force to override")
    return ws


def _family_from_kind(ws: WeightSystem, kind: str):
    if kind in ("cuboid", "koszul"):
        return family(ws, kind)
    if kind.startswith("extended:"):
        arg = kind.split(":", 1)[1]
        subset = tuple(int(t) - 1 for t in arg.split(",")) if arg else ()
        return family(ws, "extended", subset=subset)
    if kind.startswith("replicated:"):
        return family(ws, "replicated", t=int(kind.split(":", 1)[1]) - 1)
    raise SystemExit(f"unknown family kind {kind!r}")


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def cmd_describe(args) -> int:
    ws = _weights(args.weights, args.force)
    specials = {k: v.to_json() for k, v in ws.specials().items()}
    dims = []
    probe = [ws.zero(), ws.c(), ws.s(), ws.delta(), ws.omega()] + [ws.x(i) for i in range(ws.n)]
    seen = set()
    for a in probe:
        if a in seen:
            continue
        seen.add(a)
        dims.append({"degree": a.to_json(), "dim_R": a.dim_r(), "dim_S": a.dim_s()})
    size = 1
    for w in ws.p:
        size *= w - 1
    _emit({"weights": ws.to_json(), "specials": specials, "dims": dims, "cuboid_size": size})
    print(f"weights {ws}: cuboid size {size}, delta = {ws.delta()}", file=sys.stderr)
    return 0


def cmd_tilt(args) -> int:
    ws = _weights(args.weights, args.force)
    fam = _family_from_kind(ws, args.kind)
    _emit(fam.to_json())
    print(f"{fam.kind} family over {ws}: {fam.size} summands", file=sys.stderr)
    return 0


def cmd_endo(args) -> int:
    ws = _weights(args.weights, args.force)
    fam = _family_from_kind(ws, args.kind)
    try:
        mat = hom_matrix(fam)
    except UnknownHomError as exc:
        _emit({"error": str(exc)})
        return 1
    pred = predicted_cartan(fam)
    diff = (mat - pred.cartan).tolist()
    equal = bool((mat == pred.cartan).all())
    if args.csv:
        sys.stdout.write(hom_matrix_csv(fam, mat))
    else:
        _emit(
            {
                "family": fam.to_json(),
                "hom_matrix": mat.tolist(),
                "predicted_cartan": pred.cartan.tolist(),
                "predicted_algebra": pred.name,
                "diff": diff,
                "equal": equal,
            }
        )
    print(f"endomorphism matrix vs Cartan of {pred.name}: {'equal' if equal else 'DIFFERENT'}", file=sys.stderr)
    return 0 if equal else 1


def cmd_verify(args) -> int:
    ws = _weights(args.weights, args.force)
    fam = _family_from_kind(ws, args.kind)
    window = (-args.window, args.window) if args.window else None
    report = verify_tilting(fam, window)
    print(report.to_json())
    print(f"verify {fam.kind} over {ws}: {'pass' if report.passed else 'FAIL'}", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_ladder(args) -> int:
    ws = _weights(args.weights, args.force)
    ladder = build_ladder(ws, args.split)
    report = check_recollement(ladder, level_bound=args.level_bound)
    print(report.to_json())
    print(f"ladder over {ws} split {report.split}: {'pass' if report.passed else 'FAIL'}", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_glue(args) -> int:
    ws = _weights(args.weights, args.force)
    if ws.p != (3, 4):
        raise SystemExit("the glue workflow is wired for weights 3,4")
    ladder = build_ladder(ws, 3)
    results = {}
    ok = True
    if args.variant in ("cuboid", "both"):
        fam1 = family(ladder.emb1.source, "cuboid")
        fam2 = family(ladder.emb2.source, "cuboid")
        glued, report = glue(ladder, fam1, fam2, 2, 0)
        target = family(ws, "cuboid")
        match = same_family(glued, target)
        results["cuboid"] = {
            "summands": list(glued.labels),
            "obstruction_vanishes": report.tilting,
            "equals_cuboid": match,
        }
        ok = ok and report.tilting and match
    if args.variant in ("koszul", "both"):
        fam1 = family(ladder.emb1.source, "koszul")
        fam2 = family(ladder.emb2.source, "koszul")
        glued, report = glue(ladder, fam1, fam2, 1, -1)
        target = family(ws, "koszul")
        match = same_family(glued, target)
        results["koszul"] = {
            "summands": list(glued.labels),
            "obstruction_vanishes": report.tilting,
            "equals_koszul": match,
        }
        ok = ok and report.tilting and match
    _emit(results)
    print(f"glue workflows over {ws}: {'pass' if ok else 'FAIL'}", file=sys.stderr)
    return 0 if ok else 1


def _coxeter_suite(name: str):
    rows = []
    if name == "happel-seidel":
        for a, b in ((3, 3), (3, 4), (3, 5), (4, 4), (2, 7)):
            m = (a - 1) * (b - 1)
            polys = [
                ("A_m({})".format(a), coxeter_polynomial(nakayama(m, a))),
                ("A_m({})".format(b), coxeter_polynomial(nakayama(m, b))),
                ("tensor", coxeter_polynomial(tensor(nakayama(a - 1, a - 1), nakayama(b - 1, b - 1)))),
            ]
            rows.append(((a, b), polys))
    elif name == "replicated":
        for p in ((3, 4), (3, 4, 5), (2, 3, 4)):
            ws = WeightSystem(p)
            cub = None
            for w in p:
                piece = nakayama(w - 1, w - 1)
                cub = piece if cub is None else tensor(cub, piece)
            target = coxeter_polynomial(cub)
            polys = [("cuboid", target)]
            for t in range(len(p)):
                polys.append((f"Gamma^{t + 1}", coxeter_polynomial(gamma_quiver(ws, t))))
            rows.append((p, polys))
    elif name == "dynkin":
        for m, letter, rank in ((2, "D", 4), (3, "E", 6), (4, "E", 8)):
            polys = [
                (f"A2xA{m}", coxeter_polynomial(tensor(nakayama(2, 2), nakayama(m, m)))),
                (f"{letter}{rank}", coxeter_polynomial(dynkin_path_algebra(letter, rank))),
            ]
            rows.append(((2, m), polys))
        for l, m in ((2, 2), (2, 3), (3, 3)):
            polys = [
                (f"A{l}xA{m}", coxeter_polynomial(tensor(nakayama(l, l), nakayama(m, m)))),
                (f"A{m}^({l - 1})", coxeter_polynomial(replicated(nakayama(m, m), l - 1))),
            ]
            rows.append(((l, m), polys))
    else:
        raise SystemExit(f"unknown suite {name!r}")
    return rows


def cmd_coxeter(args) -> int:
    rows = _coxeter_suite(args.suite)
    payload = []
    ok = True
    for key, polys in rows:
        coeffs = [list(p.coeffs) for _, p in polys]
        equal = all(c == coeffs[0] for c in coeffs)
        ok = ok and equal
        payload.append(
            {
                "case": list(key),
                "polynomials": [{"name": n, "coeffs": list(p.coeffs)} for n, p in polys],
                "equal": equal,
            }
        )
        print(f"{key}: {'equal' if equal else 'DIFFERENT'}  {polys[0][1]}", file=sys.stderr)
    _emit({"suite": args.suite, "cases": payload, "all_equal": ok})
    return 0 if ok else 1


def cmd_oracle_check(args) -> int:
    ws = _weights(args.weights, args.force)
    q = args.modulus
    if args.pair:
        a = parse_object(ws, args.pair[0])
        b = parse_object(ws, args.pair[1])
        h = hom_dim(a, b)
        o = None if (a.is_zero or b.is_zero) else oracle_hom(a.canonical(), b.canonical(), 0, q)
        o = 0 if o is None else o
        _emit({"pair": [str(a), str(b)], "calculus": h, "oracle": o, "agree": h is None or h == o})
        print(f"Hom({a}, {b}): calculus {h}, oracle {o}", file=sys.stderr)
        return 0 if (h is None or h == o) else 1
    cub = cuboid_objects(ws)
    twists = [ws.element(bits) for bits in itertools.product((0, 1), repeat=ws.n)]
    shifts = range(-args.shift_window, args.shift_window + 1)
    checked = disagreements = unknown = 0
    bad = []
    for a_base in cub:
        for u in twists:
            for m in shifts:
                a = StableObject(ws, a_base.ell, u, m)
                for b in cub:
                    h = hom_dim(a, b)
                    checked += 1
                    if h is None:
                        unknown += 1
                        continue
                    o = oracle_hom(a.canonical(), b, 0, q)
                    if h != o:
                        disagreements += 1
                        bad.append({"pair": [str(a), str(b)], "calculus": h, "oracle": o})
    payload = {
        "weights": ws.to_json(),
        "modulus": q,
        "checked": checked,
        "disagreements": disagreements,
        "unknown": unknown,
        "unknown_rate": unknown / checked if checked else 0.0,
        "failures": bad,
    }
    _emit(payload)
    print(
        f"oracle audit over {ws}: {checked} pairs, {disagreements} disagreements, {unknown} unknown",
        file=sys.stderr,
    )
    return 0 if disagreements == 0 else 1


def cmd_quiver(args) -> int:
    descriptor = args.algebra
    if descriptor.startswith("lambda:"):
        ws = _weights(args.weights, args.force)
        qvec = tuple(int(t) for t in descriptor.split(":", 1)[1].split(","))
        alg = lambda_q(ws, qvec)
    elif descriptor.startswith("gamma:"):
        ws = _weights(args.weights, args.force)
        alg = gamma_quiver(ws, int(descriptor.split(":", 1)[1]) - 1)
    elif descriptor.startswith("nakayama:"):
        n, m = (int(t) for t in descriptor.split(":", 1)[1].split(","))
        alg = nakayama(n, m)
    elif descriptor.startswith("dynkin:"):
        letter = descriptor.split(":", 1)[1]
        alg = dynkin_path_algebra(letter[0], int(letter[1:]))
    else:
        raise SystemExit(f"unknown algebra descriptor {descriptor!r}")
    if args.dot:
        sys.stdout.write(alg.to_dot())
    elif args.csv:
        sys.stdout.write(alg.cartan_csv())
    else:
        _emit(alg.to_json())
    print(f"{alg.name}: {alg.size} vertices, {len(alg.arrows)} arrows, {len(alg.relations)} relations", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="bpsing", description=__doc__)
    parser.add_argument("--force", action="store_true", help="override the cuboid size cap")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_weights(p):
        p.add_argument("-p", "--weights", required=True, help="comma-separated weights, e.g. 3,4")

    p = sub.add_parser("describe", help="special elements and graded dimensions")
    add_weights(p)
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("tilt", help="list a tilting family")
    add_weights(p)
    p.add_argument("--kind", default="cuboid", help="cuboid | koszul | extended:I | replicated:t (1-based)")
    p.set_defaults(func=cmd_tilt)

    p = sub.add_parser("endo", help="endomorphism matrix against the predicted Cartan")
    add_weights(p)
    p.add_argument("--kind", default="cuboid")
    p.add_argument("--csv", action="store_true", help="emit the Hom matrix as CSV")
    p.set_defaults(func=cmd_endo)

    p = sub.add_parser("verify", help="rigidity and exceptionality report")
    add_weights(p)
    p.add_argument("--kind", default="cuboid")
    p.add_argument("--window", type=int, default=0, help="half-width of the shift window")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ladder", help="recollement and periodicity report")
    add_weights(p)
    p.add_argument("--split", type=int, required=True, help="the split value p_{1,n}")
    p.add_argument("--level-bound", type=int, default=2)
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("glue", help="gluing workflows for weights 3,4")
    add_weights(p)
    p.add_argument("--variant", default="both", choices=("cuboid", "koszul", "both"))
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("coxeter", help="derived-invariant polynomial suites")
    p.add_argument("--suite", required=True, choices=("happel-seidel", "replicated", "dynkin"))
    p.set_defaults(func=cmd_coxeter)

    p = sub.add_parser("oracle-check", help="audit the Hom calculus against the factorization oracle")
    add_weights(p)
    p.add_argument("--pair", nargs=2, metavar=("A", "B"), help='audit one pair, e.g. --pair "U[2,3]" "U[1,1](1,0;-1)[2]"')
    p.add_argument("--shift-window", type=int, default=2)
    p.add_argument("--modulus", type=int, default=int(os.environ.get("BPSING_MODULUS", DEFAULT_MODULUS)))
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("quiver", help="emit a quiver presentation")
    p.add_argument("-p", "--weights", default="3,4")
    p.add_argument("--algebra", required=True, help="lambda:q1,..|gamma:t|nakayama:n,m|dynkin:E6")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_quiver)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
