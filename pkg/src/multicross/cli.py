"""Command line entry point: ``multicross <subcommand> ...``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
3 a budget ran out and only bounds are known.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import census, constructions, formulas, geometry, solver
from .graph import EdgeSet, PartitionedGraph, edge_set_between, empty_edges, incident_edges, parse_graph_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
REPORT_FORMAT = "crossing-report/1"


class UsageError(Exception):
    pass


def _emit(obj: dict, out: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _budget(text: str) -> float:
    t = text.strip().lower()
    scale = 1.0
    if t.endswith("ms"):
        t, scale = t[:-2], 0.001
    elif t.endswith("s"):
        t = t[:-1]
    elif t.endswith("m"):
        t, scale = t[:-1], 60.0
    try:
        value = float(t) * scale
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad budget {text!r}; use seconds like 600 or 600s") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def _graph(text: str) -> PartitionedGraph:
    try:
        return parse_graph_spec(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# ---------------------------------------------------------------------------
# formula
# ---------------------------------------------------------------------------


def cmd_formula(args) -> int:
    if args.table:
        codes = [args.family] if args.family else list(formulas.FAMILIES)
        for c in codes:
            formulas.get_family(c)
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["family", "n", "value", "status"])
        warned = set()
        for c in codes:
            for n in range(1, args.max_n + 1):
                entry = formulas.family_formula(c, n)
                if entry.conjectural and c not in warned:
                    print(f"warning: {c} values are conjectural", file=sys.stderr)
                    warned.add(c)
                w.writerow([c, n, entry.value, entry.status])
        return EXIT_OK
    if not args.family or args.n is None:
        raise UsageError("formula needs --family and --n, or --table")
    fam = formulas.get_family(args.family)
    entry = formulas.family_formula(args.family, args.n)
    z_m = sum(fam.sizes)
    z = formulas.zarankiewicz(z_m, args.n)
    extra = entry.value - z
    shown = f"Z({z_m},{args.n})" + (f"+{extra}" if extra else "")
    if entry.conjectural:
        print(f"warning: {args.family} is conjectural; the value is not a proven crossing number", file=sys.stderr)
    if args.json:
        _emit({"family": entry.family, "n": entry.n, "value": entry.value, "status": entry.status,
               "closed_form": fam.closed_form}, None)
    else:
        print(f"{args.family} n={args.n}: {shown} = {entry.value}  status: {entry.status}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# construct / count
# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    d = constructions.construct_family(args.family, args.n)
    geometry.save_drawing(d, args.out)
    if args.svg:
        Path(args.svg).write_bytes(geometry.to_svg(d))
    total = geometry.total_crossings(d)
    print(f"{args.family} n={args.n}: {total} crossings -> {args.out}")
    return EXIT_OK


def parse_selector(g: PartitionedGraph, text: str) -> EdgeSet:
    """Edge-set selector: ``XY`` (edges between parts X and Y), ``Z`` (edges at
    part Z), ``z1`` (edges at vertex z1), ``all``; join terms with ``+``."""
    out = empty_edges(g)
    for term in text.split("+"):
        term = term.strip()
        if term == "all":
            out = out | g.all_edges()
        elif term in g.part_index:
            out = out | incident_edges(g, term)
        elif g.names and term in g.names:
            p = g.names.index(term)
            for v in g.parts[p]:
                out = out | incident_edges(g, v)
        elif g.names and len(term) == 2 and all(ch in g.names for ch in term) and term[0] != term[1]:
            out = out | edge_set_between(g, g.names.index(term[0]), g.names.index(term[1]))
        else:
            parts = ", ".join(g.names) if g.names else "none"
            raise UsageError(f"unknown edge-set selector {term!r} (parts: {parts})")
    return out


def cmd_count(args) -> int:
    try:
        d = geometry.load_drawing(args.file)
    except geometry.InvalidDrawing as exc:
        print(f"error: invalid drawing: {exc.violations[0]}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep = d.report
    if not rep.valid:
        print(f"error: drawing is not good: {rep.violations[0]}", file=sys.stderr)
        return EXIT_USAGE
    if args.between:
        a = parse_selector(d.graph, args.between[0])
        b = parse_selector(d.graph, args.between[1])
        print(geometry.count_crossings(d, a, b))
    elif args.within:
        print(geometry.count_crossings(d, parse_selector(d.graph, args.within)))
    else:
        print(rep.total)
    return EXIT_OK


# ---------------------------------------------------------------------------
# exact / census
# ---------------------------------------------------------------------------


def _exact_json(g: PartitionedGraph, r) -> dict:
    sizes = [len(p) for p in g.parts]
    if r.exact:
        return {"format": REPORT_FORMAT, "graph": sizes, "exact": True, "k": r.k,
                "lower_bound": r.lower_bound, "witness": r.witness.to_json(),
                "exhausted_levels": r.exhausted_levels, "nodes": r.nodes, "seconds": round(r.elapsed, 3)}
    return {"format": REPORT_FORMAT, "graph": sizes, "exact": False, "lower": r.lower, "upper": r.upper,
            "reason": r.reason, "nodes": r.nodes, "seconds": round(r.elapsed, 3)}


def cmd_exact(args) -> int:
    g = args.graph
    r = solver.exact_crossing_number(g, budget=args.budget, max_k=args.max_k, threads=args.threads)
    if args.json:
        _emit(_exact_json(g, r), None)
    elif r.exact:
        print(f"cr = {r.k}  ({r.elapsed:.2f}s, {r.nodes} nodes)")
        for e, f in r.witness.pairs:
            print(f"  {e[0]}-{e[1]} x {f[0]}-{f[1]}")
    else:
        upper = "?" if r.upper is None else r.upper
        print(f"bounds only: {r.lower} <= cr <= {upper}  ({r.reason})")
    return EXIT_OK if r.exact else EXIT_BUDGET


def cmd_census(args) -> int:
    g = args.graph
    classes = census.enumerate_drawings(g, args.max_k, equivalence=args.equivalence, force=args.force)
    report = {
        "format": REPORT_FORMAT,
        "graph": [len(p) for p in g.parts],
        "equivalence": args.equivalence,
        "max_crossings": args.max_k,
        "classes": [
            {
                "crossings": c.crossings,
                "pairs": [[list(e), list(f)] for e, f in c.configuration.pairs],
                "face_profile": c.face_profile(),
                "code": c.code,
            }
            for c in classes
        ],
    }
    if args.out:
        _emit(report, args.out)
    counts: dict[int, int] = {}
    for c in classes:
        counts[c.crossings] = counts.get(c.crossings, 0) + 1
    print(f"{len(classes)} classes; by crossings: " + ", ".join(f"{k}:{v}" for k, v in sorted(counts.items())))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerifyPlan:
    families: tuple[str, ...]
    max_n: int
    solver_max_n: int
    budget: float
    run_census: bool
    report: Optional[str]

    def __post_init__(self) -> None:
        if self.max_n < 1:
            raise UsageError("--max-n must be at least 1")
        if self.budget <= 0:
            raise UsageError("budget must be positive")
        for f in self.families:
            if f not in formulas.CONSTRUCTED:
                raise UsageError(f"no construction for {f}; choose from {', '.join(formulas.CONSTRUCTED)}")


def run_verify(plan: VerifyPlan, threads: int = 1) -> tuple[dict, int]:
    checks = []
    status = EXIT_OK
    for fam in plan.families:
        for n in range(1, plan.max_n + 1):
            entry = formulas.family_formula(fam, n)
            d = constructions.construct_family(fam, n)
            rep = d.report
            row = {"family": fam, "n": n, "formula": entry.value, "status": entry.status,
                   "valid": rep.valid, "count": rep.total if rep.valid else None}
            ok = rep.valid and rep.total == entry.value
            if n <= plan.solver_max_n:
                r = solver.exact_crossing_number(d.graph, budget=plan.budget, threads=threads)
                if r.exact:
                    row["solver"] = r.k
                    ok = ok and r.k == entry.value
                else:
                    row["solver"] = {"lower": r.lower, "upper": r.upper}
                    ok = ok and r.lower <= entry.value
                    if ok and status == EXIT_OK:
                        status = EXIT_BUDGET
            row["pass"] = ok
            if not ok:
                status = EXIT_FAIL
            checks.append(row)
    out = {"format": REPORT_FORMAT, "checks": checks}
    if plan.run_census:
        lemmas = census.verify_region_lemmas()
        out["census"] = lemmas.to_json()
        if not lemmas.passed:
            status = EXIT_FAIL
    out["pass"] = status == EXIT_OK
    out["exit"] = status
    return out, status


def cmd_verify(args) -> int:
    fams = tuple(args.family) if args.family else formulas.CONSTRUCTED
    plan = VerifyPlan(fams, args.max_n, args.solver_max_n, args.budget, not args.no_census, args.report)
    out, status = run_verify(plan, args.threads)
    if plan.report:
        _emit(out, plan.report)
    for row in out["checks"]:
        mark = "ok  " if row["pass"] else "FAIL"
        solved = f" solver={row['solver']}" if "solver" in row else ""
        print(f"{mark} {row['family']} n={row['n']}: count={row['count']} formula={row['formula']}{solved}")
    if "census" in out:
        c = out["census"]
        print(f"{'ok  ' if c['pass'] else 'FAIL'} census: K23 classes={c['k23_classes']}, "
              f"rich-face counterexamples={len(c['at_most_one_rich_face']['counterexamples'])}, "
              f"all-five classes={c['classes_with_face_on_all_vertices']}")
    return status


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multicross", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("formula", help="closed-form values")
    f.add_argument("--family", choices=list(formulas.FAMILIES))
    f.add_argument("--n", type=int)
    f.add_argument("--table", action="store_true", help="CSV table for n = 1..max-n")
    f.add_argument("--max-n", type=int, default=12)
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_formula)

    c = sub.add_parser("construct", help="build a drawing and write it as JSON")
    c.add_argument("--family", required=True, choices=list(formulas.CONSTRUCTED))
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--svg")
    c.set_defaults(func=cmd_construct)

    k = sub.add_parser("count", help="count crossings in a drawing file")
    k.add_argument("file")
    g = k.add_mutually_exclusive_group()
    g.add_argument("--between", nargs=2, metavar=("A", "B"))
    g.add_argument("--within", metavar="A")
    k.set_defaults(func=cmd_count)

    e = sub.add_parser("exact", help="exact crossing number by search")
    e.add_argument("--graph", type=_graph, required=True, help='part sizes, e.g. "1,1,1,2,2"')
    e.add_argument("--budget", type=_budget, default=600.0)
    e.add_argument("--max-k", type=int)
    e.add_argument("--threads", type=int, default=1)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_exact)

    s = sub.add_parser("census", help="enumerate good drawings of a tiny graph")
    s.add_argument("--graph", type=_graph, required=True)
    s.add_argument("--max-k", type=int)
    s.add_argument("--equivalence", choices=census.EQUIVALENCES, default=census.SPHERE)
    s.add_argument("--force", action="store_true", help="skip the size guard")
    s.add_argument("--out")
    s.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", help="constructions vs formulas vs solver, plus census checks")
    v.add_argument("--family", action="append", choices=list(formulas.CONSTRUCTED))
    v.add_argument("--max-n", type=int, default=6)
    v.add_argument("--solver-max-n", type=int, default=2)
    v.add_argument("--budget", type=_budget, default=600.0, help="per solver instance")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--no-census", action="store_true")
    v.add_argument("--report")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
