"""Command-line front end.

Subcommands: build-rep, export-lp, classify, verify, solve, separate,
facet, corpus. Every command emits a deterministic JSON report for fixed
inputs and seed (wall time is reported only with --timing, so the default
output is byte-stable). Verify exit codes: 0 pass, 2 fail, 3 inconclusive
because a cap truncated the search.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import corpus as corpus_mod
from . import jsonio
from .dimacs import format_dimacs, parse_dimacs, parse_ordering, parse_precoloring, parse_weights
from .graphs import (
    CapExceeded,
    ParseError,
    complement,
    contains_subgraph,
    is_consistent,
    maximal_cliques,
    ordering_by_weight,
    ordering_consistent,
    ordering_identity,
    stability_number,
)
from .ineq import (
    SeparationCaps,
    clique_family_inequality,
    internal_inequality,
    matching_system,
    separate_bruteforce,
)
from .lab import (
    HULL_ARC_CAP,
    is_facet,
    verify_characterization,
    verify_coltostab,
    verify_match_subset,
    verify_preext_identity,
)
from .model import LinearInequality, build_model, export_lp, relabel_inequality
from .repgraph import arcs_of, build_path_expanded, build_rep, line_graph_matches_rep
from .solvers import (
    InfeasiblePrecoloring,
    solve_coloring_matching,
    solve_exact,
    solve_precolor_ext_matching,
)

PASS, FAIL, INCONCLUSIVE = 0, 2, 3


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _atomic_write(path: str, text: str) -> None:
    tmp = f"{path}.tmp.{os.getpid()}"
    Path(tmp).write_text(text)
    os.replace(tmp, path)


def _load_graph(path: str):
    return parse_dimacs(Path(path).read_text())


def _load_ordering(args, g):
    if getattr(args, "ordering", None):
        return parse_ordering(Path(args.ordering).read_text(), g.n)
    return ordering_identity(g)


def _parse_caps(text: str) -> SeparationCaps:
    values = {"odd": 9, "internal": 9, "cf": 6}
    if text:
        for part in text.split(","):
            key, _, num = part.partition("=")
            if key not in values or not num.isdigit():
                raise ParseError(f"bad --caps entry {part!r}")
            values[key] = int(num)
    return SeparationCaps(values["odd"], values["internal"], values["cf"])


def _report(args, command: str, inputs: list[str], parameters: dict, results: dict,
            exhausted: bool = True, started: float | None = None) -> dict:
    report = {
        "command": command,
        "inputs": {p: _digest(p) for p in inputs},
        "parameters": parameters,
        "results": results,
        "seed": args.seed,
        "exhausted": exhausted,
        "wall_time_ms": (
            round(1000 * (time.monotonic() - started)) if args.timing and started else None
        ),
    }
    return report


def _emit(args, report: dict) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        _atomic_write(args.out, text)
    sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_build_rep(args) -> int:
    started = time.monotonic()
    g = _load_graph(args.graph)
    ordering = _load_ordering(args, g)
    r = build_rep(g, ordering)
    results = jsonio.repgraph_to_json(r)
    results["n_arcs"] = r.n_arcs
    results["n_edges"] = len(r.edges)
    inputs = [args.graph] + ([args.ordering] if args.ordering else [])
    _emit(args, _report(args, "build-rep", inputs, {}, results, started=started))
    return PASS


def cmd_export_lp(args) -> int:
    g = _load_graph(args.graph)
    weights = precoloring = None
    if args.problem == "max_coloring":
        if not args.weights:
            raise ParseError("max_coloring requires --weights")
        weights = parse_weights(Path(args.weights).read_text(), g.n)
        ordering = ordering_by_weight(g, weights)
    elif args.problem == "precolor_ext":
        if not args.precoloring:
            raise ParseError("precolor_ext requires --precoloring")
        precoloring = parse_precoloring(Path(args.precoloring).read_text())
        if args.ordering:
            ordering = _load_ordering(args, g)
            if not is_consistent(ordering, precoloring):
                pairs = sorted(
                    (min(m), w)
                    for c, m in precoloring.classes.items()
                    for w in range(g.n)
                    if w not in precoloring.domain
                    and all(ordering.precedes(w, v) for v in m)
                )
                raise ParseError(
                    f"ordering not consistent with precoloring (e.g. class of "
                    f"{pairs[0][0] + 1} has no member before vertex {pairs[0][1] + 1})"
                )
        else:
            ordering = ordering_consistent(g, precoloring)
    else:
        ordering = _load_ordering(args, g)
    m = build_model(g, ordering, args.variant, args.problem, weights, precoloring)
    _atomic_write(args.out, export_lp(m))
    sidecar = {
        "objective_offset": jsonio.frac_str(m.objective_offset),
        "objective_sense": m.objective_sense,
        "variant": m.variant,
        "variables": len(m.variables),
        "constraints": len(m.constraints),
        "fixings": {jsonio.var_key(v): val for v, val in sorted(m.fixings.items())},
    }
    _atomic_write(args.out + ".json", json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    sys.stdout.write(f"wrote {args.out} ({len(m.variables)} variables, "
                     f"{len(m.constraints)} rows)\n")
    return PASS


def cmd_classify(args) -> int:
    started = time.monotonic()
    g = _load_graph(args.graph)
    cg = complement(g)
    results = {
        "n": g.n,
        "alpha_le_2": not contains_subgraph(cg, "triangle"),
        "co_K4_diamond_paw_free": not any(
            contains_subgraph(cg, p) for p in ("K4", "diamond", "paw")
        ),
        "co_kite_free": not contains_subgraph(cg, "kite"),
    }
    from .graphs import cojoin_decompose

    decomposition = cojoin_decompose(g)
    if decomposition is not None:
        results["decomposition"] = {
            "core": sorted(v + 1 for v in decomposition.core),
            "triples": [sorted(v + 1 for v in t) for t in decomposition.triples],
        }
    _emit(args, _report(args, "classify", [args.graph], {}, results, started=started))
    return PASS


def _cf_system(g, ordering, caps, budget=50_000):
    """Nonnegativity, model rows and clique-family rows over the rep graph."""
    r = build_rep(g, ordering)
    system = list(build_model(g, ordering, "compact", "coloring").constraints)
    for arc in r.arcs:
        system.append(LinearInequality({arc: Fraction(-1)}, "<=", Fraction(0), "nonneg"))
    cliques = maximal_cliques(r.as_graph())
    exhausted = len(cliques) <= caps.clique_family
    count = 0
    for size in range(1, min(caps.clique_family, len(cliques)) + 1):
        for family in itertools.combinations(cliques, size):
            count += 1
            if count > budget:
                return system, False
            for p in range(1, size + 1):
                system.append(clique_family_inequality(r, family, p))
    return system, exhausted


def cmd_verify(args) -> int:
    started = time.monotonic()
    g = _load_graph(args.graph)
    ordering = _load_ordering(args, g)
    caps = _parse_caps(args.caps)
    inputs = [args.graph] + ([args.ordering] if args.ordering else [])
    parameters = {"check": args.check, "caps": {"odd": caps.odd_set,
                  "internal": caps.internal, "cf": caps.clique_family}}
    exhausted = True
    try:
        if args.check == "coltostab":
            ok = verify_coltostab(g, ordering)
        elif args.check == "match-subset":
            ok = verify_match_subset(g, ordering)
        elif args.check == "preext":
            if not args.precoloring:
                raise ParseError("--check preext requires --precoloring")
            precoloring = parse_precoloring(Path(args.precoloring).read_text())
            inputs.append(args.precoloring)
            if not args.ordering:
                ordering = ordering_consistent(g, precoloring)
            ok = verify_preext_identity(g, precoloring, ordering)
        elif args.check == "edmonds-complete":
            cg = complement(g)
            if cg.n > caps.odd_set:
                exhausted = False
            system = [
                relabel_inequality(
                    row,
                    {
                        e: (e if ordering.precedes(*e) else (e[1], e[0]))
                        for e in (tuple(sorted(x)) for x in cg.edges)
                    },
                )
                for row in matching_system(cg, caps.odd_set)
            ]
            mode = "hull_compare" if len(arcs_of(g, ordering)) <= HULL_ARC_CAP else "lp_objective_probe"
            ok = verify_characterization(g, ordering, system, mode, seed=args.seed)
        elif args.check == "copaw-complete":
            expanded = build_path_expanded(g, ordering)
            if expanded is None:
                ok = False
            else:
                r = build_rep(g, ordering)
                ok = line_graph_matches_rep(expanded, r)
                if ok:
                    h = expanded.graph
                    if h.n > caps.odd_set:
                        exhausted = False
                    system = [
                        relabel_inequality(row, expanded.arc_for_edge)
                        for row in matching_system(h, caps.odd_set)
                    ]
                    mode = (
                        "hull_compare"
                        if len(arcs_of(g, ordering)) <= HULL_ARC_CAP
                        else "lp_objective_probe"
                    )
                    ok = verify_characterization(g, ordering, system, mode, seed=args.seed)
        elif args.check == "quasiline-complete":
            cf_cap = caps.clique_family
            while True:
                system, exhausted = _cf_system(
                    g, ordering, SeparationCaps(caps.odd_set, caps.internal, cf_cap)
                )
                ok = verify_characterization(
                    g, ordering, system, "lp_objective_probe", seed=args.seed
                )
                if ok or exhausted or cf_cap >= caps.clique_family + 2:
                    break
                cf_cap += 1  # escalate before reporting a capped failure
        elif args.check == "facet":
            if not args.subset:
                raise ParseError("--check facet requires --subset")
            subset = [int(v) - 1 for v in args.subset.split(",")]
            ineq = internal_inequality(g, ordering, subset)
            ok = is_facet(ineq, g, ordering)
        else:
            raise ParseError(f"unknown check {args.check!r}")
    except CapExceeded as exc:
        report = _report(args, "verify", inputs, parameters,
                         {"result": "inconclusive", "reason": str(exc)},
                         exhausted=False, started=started)
        _emit(args, report)
        return INCONCLUSIVE

    results = {"check": args.check, "result": "pass" if ok else "fail"}
    report = _report(args, "verify", inputs, parameters, results,
                     exhausted=exhausted, started=started)
    _emit(args, report)
    if ok:
        return PASS
    return FAIL if exhausted else INCONCLUSIVE


def cmd_solve(args) -> int:
    started = time.monotonic()
    g = _load_graph(args.graph)
    inputs = [args.graph]
    try:
        if args.method == "matching":
            if args.problem == "coloring":
                sol = solve_coloring_matching(g)
            elif args.problem == "precolor_ext":
                if not args.precoloring:
                    raise ParseError("precolor_ext requires --precoloring")
                inputs.append(args.precoloring)
                precoloring = parse_precoloring(Path(args.precoloring).read_text())
                sol = solve_precolor_ext_matching(g, precoloring)
            else:
                raise ParseError("matching method solves coloring or precolor_ext")
        else:
            weights = precoloring = None
            if args.problem == "max_coloring":
                if not args.weights:
                    raise ParseError("max_coloring requires --weights")
                inputs.append(args.weights)
                weights = parse_weights(Path(args.weights).read_text(), g.n)
                ordering = ordering_by_weight(g, weights)
            elif args.problem == "precolor_ext":
                if not args.precoloring:
                    raise ParseError("precolor_ext requires --precoloring")
                inputs.append(args.precoloring)
                precoloring = parse_precoloring(Path(args.precoloring).read_text())
                ordering = ordering_consistent(g, precoloring)
            else:
                ordering = _load_ordering(args, g)
                if args.ordering:
                    inputs.append(args.ordering)
            sol = solve_exact(g, ordering, args.problem, weights, precoloring)
    except InfeasiblePrecoloring as exc:
        report = _report(args, "solve", inputs,
                         {"problem": args.problem, "method": args.method},
                         {"status": "infeasible", "reason": str(exc)}, started=started)
        _emit(args, report)
        return FAIL
    results = jsonio.solution_to_json(sol)
    results["status"] = "optimal"
    report = _report(args, "solve", inputs,
                     {"problem": args.problem, "method": args.method},
                     results, started=started)
    _emit(args, report)
    return PASS


def cmd_separate(args) -> int:
    started = time.monotonic()
    g = _load_graph(args.graph)
    ordering = _load_ordering(args, g)
    caps = _parse_caps(args.caps)
    point = jsonio.point_from_json(json.loads(Path(args.point).read_text()))
    arcs = arcs_of(g, ordering)
    full_point = {arc: Fraction(point.get(arc, 0)) for arc in arcs}
    families = tuple(args.families.split(",")) if args.families else (
        "model", "odd-set", "internal", "clique-family")
    result = separate_bruteforce(g, ordering, full_point, families, caps)
    inputs = [args.graph, args.point] + ([args.ordering] if args.ordering else [])
    results = {
        "violated": jsonio.inequality_to_json(result.inequality)
        if result.inequality
        else None,
    }
    report = _report(args, "separate", inputs, {"families": list(families)},
                     results, exhausted=result.exhausted, started=started)
    _emit(args, report)
    return PASS


def cmd_facet(args) -> int:
    args.check = "facet"
    args.caps = args.caps or ""
    return cmd_verify(args)


def cmd_corpus(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.max_n > corpus_mod.GENERATION_CAP:
        raise ParseError(f"--max-n capped at {corpus_mod.GENERATION_CAP}")
    written = []
    for n in range(1, args.max_n + 1):
        for i, g in enumerate(corpus_mod.generate_graphs(n, connected_only=True)):
            name = f"g{n}_{i:03d}.col"
            _atomic_write(str(out_dir / name), format_dimacs(g))
            written.append(name)
    for name, g in sorted(corpus_mod.named_instances().items()):
        _atomic_write(str(out_dir / f"{name}.col"), format_dimacs(g))
        written.append(f"{name}.col")
    sys.stdout.write(f"wrote {len(written)} instances to {out_dir}\n")
    return PASS


# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--caps", default="", help="odd=9,internal=9,cf=6")
    parser.add_argument("--format", choices=["json"], default="json")
    parser.add_argument("--timing", action="store_true",
                        help="include wall time in reports (breaks byte determinism)")
    parser.add_argument("--out", default=None, help="also write the report to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repcol",
        description="Representatives-formulation coloring laboratory",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("build-rep", help="construct the representation graph")
    p.add_argument("graph")
    p.add_argument("--ordering")
    _add_common(p)
    p.set_defaults(func=cmd_build_rep)

    p = sub.add_parser("export-lp", help="write a model in LP format")
    p.add_argument("graph")
    p.add_argument("--problem", choices=["coloring", "max_coloring", "precolor_ext"],
                   default="coloring")
    p.add_argument("--variant", choices=["compact", "original"], default="compact")
    p.add_argument("--ordering")
    p.add_argument("--weights")
    p.add_argument("--precoloring")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--caps", default="")
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_export_lp)

    p = sub.add_parser("classify", help="structural class membership")
    p.add_argument("graph")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run a polyhedral verification")
    p.add_argument("graph")
    p.add_argument("--check", required=True,
                   choices=["coltostab", "match-subset", "preext", "edmonds-complete",
                            "copaw-complete", "quasiline-complete", "facet"])
    p.add_argument("--ordering")
    p.add_argument("--precoloring")
    p.add_argument("--subset", help="1-indexed comma-separated vertex set (facet check)")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="solve coloring, max-coloring or extension")
    p.add_argument("graph")
    p.add_argument("--problem", choices=["coloring", "max_coloring", "precolor_ext"],
                   default="coloring")
    p.add_argument("--method", choices=["matching", "exact"], default="exact")
    p.add_argument("--ordering")
    p.add_argument("--weights")
    p.add_argument("--precoloring")
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("separate", help="find a violated inequality")
    p.add_argument("graph")
    p.add_argument("--point", required=True)
    p.add_argument("--ordering")
    p.add_argument("--families", default="")
    _add_common(p)
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("facet", help="facet check for an internal inequality")
    p.add_argument("graph")
    p.add_argument("--subset", required=True)
    p.add_argument("--ordering")
    _add_common(p)
    p.set_defaults(func=cmd_facet)

    p = sub.add_parser("corpus", help="write the desk-scale instance corpus")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--caps", default="")
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
