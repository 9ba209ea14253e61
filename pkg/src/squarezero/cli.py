"""Command line interface.

Exit codes: 0 success, 1 verified violation or failing verdict, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checker, figure1
from .involution import (
    Involution,
    anti_diagonal_dual,
    block_type,
    boundary_counts,
    enumerate_rp,
    from_matrix,
)
from .polyalg import PolyMatrix, minor
from .poset import (
    AncestorError,
    build_order,
    duality_classes,
    export_hasse,
    maximal_elements,
    orbit_representative,
    parse_kinds,
    sorted_classes,
    unique_maximal_ancestor,
)


class InputError(ValueError):
    pass


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _sorted(invs):
    return [str(s) for s in sorted(invs, key=lambda s: s.pairs)]


def _index_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated indices, got {text!r}") from None


def _read_matrix(path: str) -> PolyMatrix:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return PolyMatrix.from_json(text)


# rp -------------------------------------------------------------------------


def cmd_rp_enum(args, out):
    invs = _sorted(enumerate_rp(args.n))
    if args.format == "json":
        out.write(_json({"n": args.n, "count": len(invs), "involutions": invs}))
    else:
        out.write("".join(s + "\n" for s in invs))
        out.write(f"# {len(invs)} involutions\n")
    return 0


def cmd_rp_poset(args, out):
    dag = build_order(args.n, parse_kinds(args.moves))
    if args.format == "text":
        sizes = [len(lev) for lev in dag.level_sets()]
        data = (f"nodes {len(dag.nodes)}\ncovers {len(dag.covers)}\n"
                f"levels {' '.join(map(str, sizes))}\n").encode()
    else:
        data = export_hasse(dag, args.format)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        out.write(data.decode())
    return 0


def cmd_rp_maximal(args, out):
    max_iii = maximal_elements(build_order(args.n, {"III"}))
    max_iiiv = maximal_elements(build_order(args.n, {"III", "V"}))
    result = {
        "n": args.n,
        "maximal": _sorted(max_iiiv),
        "count": len(max_iiiv),
        "discrepancy": {
            "only_iii": _sorted(max_iii - max_iiiv),
            "only_iii_v": _sorted(max_iiiv - max_iii),
        },
    }
    if args.dual_classes:
        classes = sorted_classes(duality_classes(max_iiiv))
        result["dual_classes"] = [[str(s) for s in c] for c in classes]
        result["class_count"] = len(classes)
    if args.format == "json":
        out.write(_json(result))
    else:
        out.writelines(f"{s}\n" for s in result["maximal"])
        out.write(f"# {result['count']} maximal\n")
        if max_iii != max_iiiv:
            out.write(f"# moves III alone give a different set: {result['discrepancy']}\n")
        if args.dual_classes:
            for c in result["dual_classes"]:
                out.write("{" + " ; ".join(c) + "}\n")
            out.write(f"# {result['class_count']} classes\n")
    return 0


def cmd_rp_levels(args, out):
    dag = build_order(args.n, {"III"})
    levels = [_sorted(lev) for lev in dag.level_sets()]
    if args.format == "json":
        out.write(_json({"n": args.n, "sizes": [len(x) for x in levels], "levels": levels}))
    else:
        for k, lev in enumerate(levels, 1):
            out.write(f"L{k} ({len(lev)}): {' '.join(lev)}\n")
    return 0


def cmd_rp_ancestor(args, out):
    sigma = Involution.parse(args.sigma, args.n).require_full()
    dag = build_order(args.n, {"III"})
    try:
        anc = unique_maximal_ancestor(dag)[sigma]
    except AncestorError as exc:
        out.write(_json({"sigma": str(sigma), "violation": str(exc)}) if args.format == "json"
                  else f"violation: {exc}\n")
        return 1
    if args.format == "json":
        out.write(_json({"sigma": str(sigma), "ancestor": str(anc)}))
    else:
        out.write(f"{anc}\n")
    return 0


def cmd_rp_type(args, out):
    sigma = Involution.parse(args.sigma, args.n).require_full()
    t = block_type(sigma)
    C, R = boundary_counts(sigma)
    if args.format == "json":
        out.write(_json({"sigma": str(sigma), "type": list(t), "l": len(t) - 1, "C": C, "R": R}))
    else:
        out.write(f"({','.join(map(str, t))})\n")
    return 0


def cmd_rp_dual(args, out):
    sigma = Involution.parse(args.sigma, args.n).require_full()
    dual = anti_diagonal_dual(sigma)
    if args.format == "json":
        out.write(_json({"sigma": str(sigma), "dual": str(dual)}))
    else:
        out.write(f"{dual}\n")
    return 0


def cmd_rp_verify_figure1(args, out):
    golden = figure1.load_golden(args.golden)
    result = figure1.verify_figure1(golden)
    if args.format == "json":
        out.write(_json(result))
    else:
        for row in result["levels"]:
            mark = "ok" if row["match"] else "MISMATCH"
            out.write(f"L{row['level']}: computed {row['computed']} golden {row['golden']} {mark}\n")
        out.write(f"maximal set: {'ok' if result['maximal_ok'] else 'MISMATCH'}\n")
        out.write(f"unique maximal ancestor: {'ok' if result['ancestor_ok'] else 'VIOLATED'} "
                  f"({result['golden_ancestor_determined']} nodes cross-checked against golden edges)\n")
        e = result["edges"]
        out.write(f"edges (diagnostic): computed {e['computed']} golden {e['golden']} "
                  f"common {e['common']} only-computed {len(e['only_computed'])} "
                  f"only-golden {len(e['only_golden'])}\n")
        out.write("verified\n" if result["verified"] else "NOT verified\n")
    return 0 if result["verified"] else 1


# mat ------------------------------------------------------------------------


def cmd_mat_check(args, out):
    D = _read_matrix(args.file)
    inst = checker.ConjectureInstance(D, C=args.C, R=args.R)
    report = checker.verify_instance(inst, args.mode, args.samples, args.seed)
    if args.format == "json":
        out.write(_json(report))
    else:
        for name, v in sorted(report["conditions"].items()):
            extra = f" points={v['points']}" if "points" in v else ""
            wit = f" witness={json.dumps(v['witness'], sort_keys=True)}" if "witness" in v else ""
            out.write(f"{name}: {v['status']}{extra}{wit}\n")
        ineq = report["inequality"]
        out.write(f"C={report['C']} R={report['R']} d={report['d']} type={report['type']}\n")
        out.write(f"inequality {ineq['lhs']} >= {ineq['rhs']}: {ineq['holds']}\n")
        out.write(f"{report['classification']}\n")
    return 0 if report["classification"] == "consistent" else 1


def cmd_mat_orbit_rep(args, out):
    X = _read_matrix(args.file)
    if not X.field.is_prime_field:
        raise InputError("orbit-rep needs a matrix over a prime field")
    if any(not p.is_constant() for p in X.entries.values()):
        raise InputError("orbit-rep needs a scalar matrix (constant entries)")
    rows = X.evaluate((0,) * X.nvars)
    P = orbit_representative(rows, X.field.p)
    result = {"n": P.n, "ones": sorted(map(list, P.ones))}
    if 2 * len(P.ones) == P.n:
        result["involution"] = str(from_matrix(P))
    if args.format == "json":
        out.write(_json(result))
    else:
        out.write(" ".join(f"({i},{j})" for i, j in result["ones"]) + "\n")
        if "involution" in result:
            out.write(result["involution"] + "\n")
    return 0


def cmd_mat_minor(args, out):
    D = _read_matrix(args.file)
    rows, cols = _index_list(args.rows), _index_list(args.cols)
    m = minor(D, rows, cols)
    if args.format == "json":
        out.write(_json({"rows": rows, "cols": cols, "minor": str(m)}))
    else:
        out.write(f"{m}\n")
    return 0


# flags ----------------------------------------------------------------------


def cmd_flags_compositions(args, out):
    comps = checker.compositions_with_bounds(args.n, args.l)
    if args.format == "json":
        out.write(_json({"n": args.n, "l": args.l, "count": len(comps),
                         "compositions": [list(c) for c in comps]}))
    else:
        out.writelines("(" + ",".join(map(str, c)) + ")\n" for c in comps)
        out.write(f"# {len(comps)} compositions\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="squarezero", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    rp = groups.add_parser("rp", help="fixed-point-free involutions and their orbit order")
    rps = rp.add_subparsers(dest="verb", required=True)

    p = rps.add_parser("enum", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_rp_enum)

    p = rps.add_parser("poset", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--moves", choices=("iii", "iii+v"), default="iii")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rp_poset)

    p = rps.add_parser("maximal", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dual-classes", action="store_true")
    p.set_defaults(func=cmd_rp_maximal)

    p = rps.add_parser("levels", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_rp_levels)

    p = rps.add_parser("ancestor", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", required=True)
    p.set_defaults(func=cmd_rp_ancestor)

    p = rps.add_parser("type", parents=[common])
    p.add_argument("--sigma", required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_rp_type)

    p = rps.add_parser("dual", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", required=True)
    p.set_defaults(func=cmd_rp_dual)

    p = rps.add_parser("verify-figure1", parents=[common])
    p.add_argument("--golden", help="golden JSON (defaults to the bundled transcription)")
    p.set_defaults(func=cmd_rp_verify_figure1)

    mat = groups.add_parser("mat", help="polynomial matrices")
    mats = mat.add_subparsers(dest="verb", required=True)

    p = mats.add_parser("check", parents=[common])
    p.add_argument("--file", required=True)
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--samples", type=int, default=checker.DEFAULT_SAMPLES)
    p.add_argument("--C", type=int, help="leading zero columns to impose (default: maximal)")
    p.add_argument("--R", type=int, help="trailing zero rows to impose (default: maximal)")
    p.set_defaults(func=cmd_mat_check)

    p = mats.add_parser("orbit-rep", parents=[common])
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_mat_orbit_rep)

    p = mats.add_parser("minor", parents=[common])
    p.add_argument("--file", required=True)
    p.add_argument("--rows", required=True)
    p.add_argument("--cols", required=True)
    p.set_defaults(func=cmd_mat_minor)

    flags = groups.add_parser("flags", help="flag types")
    fls = flags.add_subparsers(dest="verb", required=True)
    p = fls.add_parser("compositions", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_flags_compositions)

    return parser


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format == "dot" and args.func is not cmd_rp_poset:
        sys.stderr.write("error: --format dot is only available for 'rp poset'\n")
        return 2
    try:
        return args.func(args, out)
    except (ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
