"""Command-line front end.

Every command prints one JSON report (or a plain-text rendering of it with
``--format table``).  Exit status: 0 when all checks pass, 1 when some
check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import block_spectra as bs
from .exact_linalg import (
    Spectrum,
    char_poly,
    determinant,
    rational_roots,
    verify_spectrum,
)
from .graphs import (
    GraphError,
    build_graph,
    complete,
    complete_bipartite,
    enumerate_spanning_trees,
    tree_count_cofactor,
    trees_containing,
)
from .kirchhoff import dump_poly, hessian_at, hessian_at_ones, kirchhoff_polynomial
from .lefschetz import slp_check

__all__ = ["main", "run"]


class UsageError(Exception):
    pass


def _jsonable(x):
    """Structural ints stay numbers; exact values must already be strings."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, float):
        return float(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def _spectrum_payload(sp: Spectrum) -> list:
    return [[str(v), m] for v, m in sp.pairs]


def _closed_form_for(desc: str) -> Spectrum | None:
    kind, _, arg = desc.partition(":")
    if kind == "Kn" and int(arg) >= 3:
        return bs.closed_form_Kn(int(arg)).spectrum
    if kind == "Kmn":
        m, n = (int(x) for x in arg.split(","))
        if m + n >= 3:
            return bs.closed_form_Kmn(m, n).spectrum
    return None


def _parse_values(raw: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"malformed number list {raw!r}") from None


# commands


def cmd_trees_count(args) -> dict:
    g = build_graph(args.graph)
    count = tree_count_cofactor(g)
    results: dict = {"count": str(count)}
    checks = {}
    if args.enumerate:
        enum = len(enumerate_spanning_trees(g))
        results["enumerated"] = str(enum)
        checks["enumeration_matches"] = enum == count
    return {"results": results, "checks": checks}


def cmd_trees_containing(args) -> dict:
    g = build_graph(args.graph)
    try:
        edges = [int(x) for x in args.edges.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"malformed edge list {args.edges!r}") from None
    return {"results": {"edges": edges, "count": str(trees_containing(g, edges))}, "checks": {}}


def cmd_hessian(args) -> dict:
    g = build_graph(args.graph)
    results: dict = {}
    checks: dict = {}
    if args.at is not None:
        point = _parse_values(args.at)
        H = hessian_at(kirchhoff_polynomial(g), point)
        results["point"] = [str(x) for x in point]
    else:
        H = hessian_at_ones(g)
    results["size"] = H.rows
    results["matrix"] = [[str(x) for x in r] for r in H]
    if args.dump_poly:
        results["poly"] = dump_poly(kirchhoff_polynomial(g))
    if args.det:
        results["det"] = str(determinant(H))
    if args.spectrum:
        claimed = _closed_form_for(args.graph) if args.at is None else None
        source = "closed_form"
        if claimed is None:
            pairs, residual = rational_roots(char_poly(H))
            claimed = Spectrum(pairs, residual)
            source = "rational_factorization"
        results["spectrum_source"] = source
        results["spectrum"] = _spectrum_payload(claimed)
        if claimed.is_split:
            rep = verify_spectrum(H, claimed)
            checks["char_poly_match"] = rep.char_poly_match
            checks["diagonalizable"] = rep.diagonalizable
            results["inertia"] = list(rep.inertia) if rep.inertia else None
        else:
            results["irrational_factor"] = [str(c) for c in claimed.residual.coefficients]
    return {"results": results, "checks": checks}


def cmd_verify_kn(args) -> dict:
    if args.start < 3 or args.stop < args.start:
        raise UsageError("need 3 <= --from <= --to")
    rows = []
    ok = True
    for n in range(args.start, args.stop + 1):
        H = hessian_at_ones(complete(n))
        cf = bs.closed_form_Kn(n)
        rep = verify_spectrum(H, cf.spectrum)
        det = determinant(H)
        N = n * (n - 1) // 2
        checks = {
            "spectrum_verified": rep.ok,
            "det_matches_formula": det == cf.det,
            "lorentzian": rep.inertia == (1, N - 1, 0),
        }
        ok &= all(checks.values())
        rows.append(
            {
                "n": n,
                "spectrum": _spectrum_payload(cf.spectrum),
                "computed_det": str(det),
                "formula_det": str(cf.det),
                "inertia": list(rep.inertia) if rep.inertia else None,
                "checks": checks,
            }
        )
    return {"results": {"rows": rows}, "checks": {"all": ok}}


def cmd_verify_kmn(args) -> dict:
    if args.max_sum < 3:
        raise UsageError("--max-sum must be at least 3")
    rows = []
    ok = True
    for m in range(1, args.max_sum):
        for n in range(1, args.max_sum - m + 1):
            if m + n < 3:
                continue
            H = hessian_at_ones(complete_bipartite(m, n))
            cf = bs.closed_form_Kmn(m, n)
            rep = verify_spectrum(H, cf.spectrum)
            det = determinant(H)
            checks = {
                "spectrum_verified": rep.ok,
                "det_equals_spectrum_product": det == cf.product_det,
                "lorentzian": rep.inertia == (1, m * n - 1, 0),
            }
            ok &= all(checks.values())
            rows.append(
                {
                    "m": m,
                    "n": n,
                    "spectrum": _spectrum_payload(cf.spectrum),
                    "computed_det": str(det),
                    "paper_det": str(cf.paper_det),
                    "agrees": cf.agrees,
                    "inertia": list(rep.inertia) if rep.inertia else None,
                    "checks": checks,
                }
            )
    return {"results": {"rows": rows}, "checks": {"all": ok}}


def cmd_verify_blocks(args) -> dict:
    if args.trials < 0 or args.size_cap < 1:
        raise UsageError("--trials must be >= 0 and --size-cap >= 1")
    rng = np.random.default_rng(args.seed)
    cyc = [bs.cyclic_identity_error(bs.random_cyclic_spec(rng, max_n=args.size_cap)) for _ in range(args.trials)]
    half = max(1, args.size_cap // 2)
    mix = [bs.mixed_identity_error(bs.random_mixed_spec(rng, max_n=half)) for _ in range(args.trials)]
    struct = [bs.structured_m_identity_holds(bs.random_structured_spec(rng)) for _ in range(args.trials)]
    worst_c = max(cyc, default=0.0)
    worst_m = max(mix, default=0.0)
    checks = {
        "cyclic_reduction": worst_c < bs.RTOL,
        "mixed_reduction": worst_m < bs.RTOL,
        "structured_exact": all(struct),
    }
    results = {
        "trials": args.trials,
        "seed": args.seed,
        "size_cap": args.size_cap,
        "rtol": bs.RTOL,
        "cyclic_max_rel_error": worst_c,
        "mixed_max_rel_error": worst_m,
        "structured_failures": struct.count(False),
    }
    return {"results": results, "checks": checks}


def cmd_slp(args) -> dict:
    g = build_graph(args.graph)
    L = _parse_values(args.L) if args.L else None
    rep = slp_check(g, L, graph_name=args.graph)
    return {"results": rep.to_dict(), "checks": {"verdict": rep.verdict}}


# parser and driver


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "table"), default="json")

    p = argparse.ArgumentParser(
        prog="kirchhoff-hessian",
        description="Kirchhoff polynomials, graph Hessians and Lefschetz checks.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    trees = sub.add_parser("trees", help="spanning-tree counts")
    tsub = trees.add_subparsers(dest="trees_command", required=True)
    tc = tsub.add_parser("count", parents=[fmt])
    tc.add_argument("--graph", required=True)
    tc.add_argument("--enumerate", action="store_true", help="cross-check by enumeration")
    tc.set_defaults(func=cmd_trees_count)
    tk = tsub.add_parser("containing", parents=[fmt])
    tk.add_argument("--graph", required=True)
    tk.add_argument("--edges", required=True, help="comma-separated edge ids")
    tk.set_defaults(func=cmd_trees_containing)

    h = sub.add_parser("hessian", parents=[fmt], help="Hessian of the Kirchhoff polynomial")
    h.add_argument("--graph", required=True)
    h.add_argument("--at-ones", action="store_true", help="evaluate at all-ones (default)")
    h.add_argument("--at", help="comma-separated rational evaluation point")
    h.add_argument("--det", action="store_true")
    h.add_argument("--spectrum", action="store_true")
    h.add_argument("--dump-poly", action="store_true")
    h.set_defaults(func=cmd_hessian)

    v = sub.add_parser("verify", help="closed-form and identity sweeps")
    vsub = v.add_subparsers(dest="verify_command", required=True)
    vk = vsub.add_parser("kn", parents=[fmt])
    vk.add_argument("--from", dest="start", type=int, default=3)
    vk.add_argument("--to", dest="stop", type=int, default=8)
    vk.set_defaults(func=cmd_verify_kn)
    vm = vsub.add_parser("kmn", parents=[fmt])
    vm.add_argument("--max-sum", type=int, default=9)
    vm.set_defaults(func=cmd_verify_kmn)
    vb = vsub.add_parser("blocks", parents=[fmt])
    vb.add_argument("--trials", type=int, default=100)
    vb.add_argument("--seed", type=int, default=0, help="64-bit seed")
    vb.add_argument("--size-cap", type=int, default=6, help="largest circulant block size")
    vb.set_defaults(func=cmd_verify_blocks)

    s = sub.add_parser("slp", parents=[fmt], help="strong Lefschetz check")
    s.add_argument("--graph", required=True)
    s.add_argument("--L", help="comma-separated coefficients of the linear form")
    s.set_defaults(func=cmd_slp)
    return p


def _command_name(args) -> str:
    parts = [args.command]
    for attr in ("trees_command", "verify_command"):
        if getattr(args, attr, None):
            parts.append(getattr(args, attr))
    return " ".join(parts)


def _execute(args) -> tuple[dict, int]:
    params = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("func", "command", "trees_command", "verify_command", "format")
    }
    payload = args.func(args)
    ok = all(payload["checks"].values())
    report = {
        "command": _command_name(args),
        "params": params,
        "results": payload["results"],
        "checks": payload["checks"],
        "ok": ok,
    }
    return _jsonable(report), (0 if ok else 1)


def run(argv: Sequence[str]) -> tuple[dict, int]:
    """Execute a command line; return the report and the exit code."""
    return _execute(build_parser().parse_args(list(argv)))


def render_table(report: dict) -> str:
    lines = []

    def walk(prefix, x):
        if isinstance(x, dict):
            for k in sorted(x):
                walk(f"{prefix}.{k}" if prefix else k, x[k])
        elif isinstance(x, list) and x and isinstance(x[0], dict):
            for i, item in enumerate(x):
                walk(f"{prefix}[{i}]", item)
        elif isinstance(x, str) and "\n" in x:
            lines.append(f"{prefix}:")
            lines.extend("  " + ln for ln in x.rstrip("\n").splitlines())
        else:
            lines.append(f"{prefix}: {json.dumps(x) if not isinstance(x, str) else x}")

    walk("", report)
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    try:
        report, code = _execute(args)
    except (UsageError, GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "table":
        print(render_table(report))
    else:
        print(json.dumps(report, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
