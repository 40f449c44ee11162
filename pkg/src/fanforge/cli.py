"""Command-line interface: classify, verify, fan, tau, scan.

Machine-readable JSON goes to stdout; human-readable tables go to stderr.
Exit codes: 0 all PASS/INAPPLICABLE, 1 any FAIL, 2 any UNKNOWN or
CONDITIONAL without FAIL, 3 operational error (bad input, bad flags).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import verdicts as V
from .fans import (
    FanError,
    grow_multifan,
    inducing_map,
    normalize_typical,
    search_maximum_multifan,
)
from .graphs import Graph6Error, degree_profile, from_graph6, is_core_acyclic, to_graph6
from .recolor import (
    MaximalityViolation,
    TauError,
    all_tau_sequences,
    build_tau_sequence,
    fan_missing_union,
    shifting_kind,
    verify_rs1_linkage,
)
from .solver import chromatic_index, is_just_overfull, is_overfull, node_budget_default
from .theorems import (
    ScanConfig,
    exit_code,
    normalize_checks,
    run_graph_checks,
    scan_corpus,
    summarize,
    summary_tsv,
)

OP_ERROR = 3


def _read_inputs(args) -> list[str]:
    lines: list[str] = []
    if args.input:
        with open(args.input) as fh:
            lines.extend(fh.read().splitlines())
    if getattr(args, "graph", None):
        lines.extend(args.graph)
    if not lines and not sys.stdin.isatty():
        lines.extend(sys.stdin.read().splitlines())
    return [s for s in (l.strip() for l in lines) if s and s != ">>graph6<<"]


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_edge(spec: str) -> tuple[int, int]:
    try:
        a, b = spec.split("-")
        return int(a), int(b)
    except Exception:
        raise SystemExit(OP_ERROR)


def cmd_classify(args) -> int:
    lines = _read_inputs(args)
    if not lines:
        print("no input graphs", file=sys.stderr)
        return OP_ERROR
    rows = []
    for line in lines:
        try:
            g = from_graph6(line)
        except Graph6Error as exc:
            print(f"parse error: {exc}", file=sys.stderr)
            return OP_ERROR
        prof = degree_profile(g)
        acyclic = is_core_acyclic(g)
        row = {
            "graph6": to_graph6(g),
            "n": g.n,
            "m": len(g.edges),
            "delta": prof.delta,
            "core_min_degree": prof.core_min_degree,
            "core_max_degree": prof.core_max_degree,
            "core_acyclic_shortcut": acyclic,
        }
        if len(g.edges) == 0:
            row.update({"chi_prime": 0, "class": "one"})
        else:
            cv = chromatic_index(g, args.budget)
            row.update(
                {
                    "chi_prime": cv.chi_prime,
                    "class": cv.cls,
                    "solver_status": cv.status,
                }
            )
        if g.n >= 2:
            row["overfull"] = is_overfull(g)
            row["just_overfull"] = is_just_overfull(g)
        rows.append(row)
        print(
            f"{row['graph6']}: n={row['n']} m={row['m']} delta={row['delta']} "
            f"chi'={row.get('chi_prime')} class={row.get('class')} "
            f"overfull={row.get('overfull')} just_overfull={row.get('just_overfull')} "
            f"core(min,max)=({row['core_min_degree']},{row['core_max_degree']}) "
            f"core_acyclic_shortcut={'applied' if acyclic else 'not applicable'}",
            file=sys.stderr,
        )
    if args.format == "tsv":
        keys = sorted({k for r in rows for k in r})
        out = ["\t".join(keys)]
        out.extend("\t".join(str(r.get(k, "")) for k in keys) for r in rows)
        _emit(args, "\n".join(out) + "\n")
    else:
        _emit(args, "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows))
    return 0


def cmd_verify(args) -> int:
    lines = _read_inputs(args)
    if not lines:
        print("no input graphs", file=sys.stderr)
        return OP_ERROR
    try:
        checks = normalize_checks(args.checks)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return OP_ERROR
    cfg = ScanConfig(
        checks=checks,
        budget=args.budget,
        mode=args.mode,
        fan_budget=args.fan_budget,
        seed=args.seed,
    )
    reports = []
    for i, line in enumerate(lines):
        try:
            from_graph6(line)
        except Graph6Error as exc:
            print(f"parse error on line {i}: {exc}", file=sys.stderr)
            return OP_ERROR
        rep = run_graph_checks(i, line, cfg)
        reports.append(rep.to_json())
    summary = summarize(reports, cfg)
    _emit(args, "".join(json.dumps(r, sort_keys=True) + "\n" for r in reports))
    print(summary_tsv(summary), file=sys.stderr, end="")
    return exit_code(summary, reports)


def cmd_fan(args) -> int:
    lines = _read_inputs(args)
    if len(lines) != 1:
        print("fan expects exactly one graph", file=sys.stderr)
        return OP_ERROR
    try:
        g = from_graph6(lines[0])
    except Graph6Error as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return OP_ERROR
    r, s1 = _parse_edge(args.edge)
    try:
        e = g.edge_id(r, s1)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return OP_ERROR
    if args.mode == "exhaustive" and g.n >= 10 and not args.force:
        print(
            "exhaustive enumeration on n >= 10 can explode; use --mode "
            "reachability with --fan-budget, or pass --force",
            file=sys.stderr,
        )
        return OP_ERROR
    cv = chromatic_index(g, args.budget)
    if cv.status == "ok" and cv.cls != "two":
        print("warning: graph is class 1; fan lemmas are inapplicable", file=sys.stderr)
    try:
        res = search_maximum_multifan(
            g, r, s1, mode=args.mode, budget=args.fan_budget
        )
    except FanError as exc:
        print(f"cannot search fans: {exc}", file=sys.stderr)
        return OP_ERROR
    out = {
        "graph6": to_graph6(g),
        "edge": [r, s1],
        "status": res.status,
        "explored": res.explored,
        "fan": res.fan.to_json(),
        "coloring": res.phi.to_line(),
    }
    phi, fan = res.phi, res.fan
    out["tau_sequences"] = []
    try:
        nf = normalize_typical(g, phi, fan)
        phi, fan = nf.phi, nf.fan
        out["typical"] = fan.to_json()
        out["typical_coloring"] = phi.to_line()
        out["inducing_map"] = inducing_map(g, phi, fan).to_json()
        seqs = []
        for ts in all_tau_sequences(g, phi, fan):
            d = ts.to_json()
            d["shifting"] = shifting_kind(ts, phi)
            seqs.append(d)
        out["tau_sequences"] = seqs
    except (FanError, TauError, MaximalityViolation) as exc:
        out["typical"] = None
        out["note"] = f"not normalizable: {exc}"
    out["rs1_linkage"] = verify_rs1_linkage(
        g, phi, fan, maximum_status=res.status
    ).to_json()
    _emit(args, json.dumps(out, sort_keys=True) + "\n")
    print(
        f"fan at {r} from edge {r}-{s1}: |V(F)|={res.fan.size()} ({res.status})",
        file=sys.stderr,
    )
    return 0


def cmd_tau(args) -> int:
    lines = _read_inputs(args)
    if len(lines) != 1:
        print("tau expects exactly one graph", file=sys.stderr)
        return OP_ERROR
    try:
        g = from_graph6(lines[0])
    except Graph6Error as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return OP_ERROR
    r, s1 = _parse_edge(args.edge)
    try:
        g.edge_id(r, s1)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return OP_ERROR
    try:
        res = search_maximum_multifan(
            g, r, s1, mode=args.mode, budget=args.fan_budget
        )
        nf = normalize_typical(g, res.phi, res.fan)
    except FanError as exc:
        print(f"cannot build a normalized fan: {exc}", file=sys.stderr)
        return OP_ERROR
    phi, fan = nf.phi, nf.fan
    fanmiss = fan_missing_union(phi, fan)
    taus = (
        [args.color]
        if args.color is not None
        else [t for t in range(1, phi.k + 1) if t not in fanmiss]
    )
    out = {
        "graph6": to_graph6(g),
        "edge": [r, s1],
        "fan_status": res.status,
        "coloring": phi.to_line(),
        "fan": fan.to_json(),
        "sequences": [],
    }
    for tau in taus:
        entry = {"tau": tau}
        try:
            ts = build_tau_sequence(g, phi, fan, tau)
            entry["sequence"] = ts.to_json()
            entry["shifting"] = shifting_kind(ts, phi)
        except (TauError, MaximalityViolation) as exc:
            entry["error"] = str(exc)
        out["sequences"].append(entry)
    _emit(args, json.dumps(out, sort_keys=True) + "\n")
    return 0


def cmd_scan(args) -> int:
    lines = _read_inputs(args)
    try:
        checks = normalize_checks(args.checks)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return OP_ERROR
    cfg = ScanConfig(
        checks=checks,
        budget=args.budget,
        mode=args.mode,
        fan_budget=args.fan_budget,
        seed=args.seed,
    )
    reports, summary = scan_corpus(lines, cfg, workers=args.workers)
    if args.format == "tsv":
        _emit(args, summary_tsv(summary))
    else:
        _emit(args, "".join(json.dumps(r, sort_keys=True) + "\n" for r in reports))
    print(summary_tsv(summary), file=sys.stderr, end="")
    return exit_code(summary, reports)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fanforge",
        description="Edge-coloring recoloring machinery with an exact "
        "chromatic-index oracle and structural checkers for small graphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, edge=False):
        sp.add_argument("graph", nargs="*", help="inline graph6 string(s)")
        sp.add_argument("--input", help="file of graph6 lines")
        sp.add_argument("--output", help="write machine output here instead of stdout")
        sp.add_argument(
            "--budget",
            type=int,
            default=node_budget_default(),
            help="solver node budget (env FANFORGE_BUDGET)",
        )
        sp.add_argument("--fan-budget", type=int, default=2000,
                        help="coloring enumeration cap / BFS budget for fans")
        sp.add_argument("--mode", choices=["exhaustive", "reachability"],
                        default="exhaustive")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=["json", "tsv"], default="json")
        if edge:
            sp.add_argument("--edge", required=True, help="edge as u-v vertex pair")

    sp = sub.add_parser("classify", help="order, size, chi', class, overfullness")
    common(sp)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("verify", help="run checks on each input graph")
    common(sp)
    sp.add_argument("--checks", default="graph",
                    help="comma list or groups: all, graph, lemmas, theorems, conjectures")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("fan", help="maximum multifan, typical form, tau overview")
    common(sp, edge=True)
    sp.add_argument("--force", action="store_true",
                    help="allow exhaustive mode on large graphs")
    sp.set_defaults(fn=cmd_fan)

    sp = sub.add_parser("tau", help="tau-sequences at a normalized maximum fan")
    common(sp, edge=True)
    sp.add_argument("--color", type=int, default=None, help="restrict to one color")
    sp.set_defaults(fn=cmd_tau)

    sp = sub.add_parser("scan", help="corpus scan over a graph6 stream")
    common(sp)
    sp.add_argument("--checks", default="graph")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(fn=cmd_scan)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
