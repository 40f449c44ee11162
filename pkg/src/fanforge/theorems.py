"""Pseudo-fans, theorem- and conjecture-level checkers, and the corpus scan.

Every checker is hypothesis-gated: when a stated hypothesis fails the
verdict is INAPPLICABLE, never a vacuous PASS. A FAIL always carries a
replayable witness (graph6 line, coloring line, vertices/colors involved).
The scan treats the structural results as oracles: zero FAIL is the
expected outcome on every corpus, and any FAIL is surfaced loudly.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import verdicts as V
from .colorings import PartialEdgeColoring, are_linked, kempe_swap
from .fans import (
    FanError,
    MaxFanResult,
    Multifan,
    grow_kierstead_path,
    grow_multifan,
    normalize_typical,
    search_maximum_multifan,
    stability_class,
    verify_fan_elementary,
    verify_fan_linkage,
    verify_kp_elementary,
    verify_stable_swaps,
    verify_vf_stable_swaps,
)
from .graphs import (
    SimpleGraph,
    degree_profile,
    from_graph6,
    light_vertices,
    to_graph6,
)
from .recolor import (
    MaximalityViolation,
    TauError,
    WITNESS_ITEMS,
    apply_shifting,
    build_tau_sequence,
    fan_missing_union,
    is_avoiding,
    shifting_kind,
    tau_sequence_by_definition,
    verify_rs1_linkage,
    witness_avoid_set,
    witness_tau_item,
)
from .solver import (
    BudgetExceeded,
    chromatic_index,
    count_colorings,
    critical_edges,
    enumerate_colorings,
    is_just_overfull,
    is_overfull,
    iter_colorings,
    parity_check,
)

THEOREM_NAMES = ("s1-adj", "longk", "longk2", "main")
CONJECTURE_NAMES = ("just-overfull", "overfull")
LEMMA_CHECKS = (
    "fan-elementary",
    "fan-linkage",
    "kierstead",
    "stable-swaps",
    "vf-stable-swaps",
    "tau-unique",
    "rs1-linkage",
    "tau-witnesses",
    "pfan",
    "pfan-adjacency",
    "fan-missing-r",
)
GRAPH_CHECKS = ("val", "parity") + THEOREM_NAMES + tuple(
    "conj-" + c for c in CONJECTURE_NAMES
)
ALL_CHECKS = GRAPH_CHECKS + LEMMA_CHECKS


# -- pseudo-fans ---------------------------------------------------------------


@dataclass
class PFan:
    """A maximum multifan extended by (Delta-1)-neighbors that stay
    elementary under every fan-freezing coloring explored.

    p2_status: VERIFIED-WITHIN-BUDGET when the bounded search ran, UNKNOWN
    when budget 0 skipped it. Candidates broken by a reached coloring are
    recorded in `pruned` with the violating coloring as witness.
    """

    base: MaxFanResult
    extension: tuple[int, ...]
    p2_status: str
    explored: int
    pruned: list[dict] = field(default_factory=list)
    search_budget: int = 0

    def vertex_set(self) -> tuple[int, ...]:
        return self.base.fan.vertex_set() + self.extension

    def to_json(self) -> dict:
        return {
            "fan": self.base.fan.to_json(),
            "fan_status": self.base.status,
            "extension": list(self.extension),
            "p2_status": self.p2_status,
            "explored": self.explored,
            "pruned": self.pruned,
        }


def _fan_stable_reachable(
    g: SimpleGraph,
    phi: PartialEdgeColoring,
    fan: Multifan,
    budget: int,
) -> tuple[list[PartialEdgeColoring], int]:
    """Colorings reachable from phi through single Kempe swaps that keep
    the fan frozen, up to `budget` expansions."""
    out = [phi]
    seen = {phi.stable_hash()}
    frontier = [phi]
    expanded = 0
    k = phi.k
    while frontier and expanded < budget:
        state = frontier.pop(0)
        expanded += 1
        for a in range(1, k + 1):
            for b in range(a + 1, k + 1):
                for chain in state.chains(a, b):
                    nxt = kempe_swap(state, chain)
                    h = nxt.stable_hash()
                    if h in seen:
                        continue
                    seen.add(h)
                    if stability_class(nxt, phi, fan) == "F-stable":
                        out.append(nxt)
                        frontier.append(nxt)
    return out, expanded


def grow_pfan(
    g: SimpleGraph,
    r: int,
    s1: int,
    budget: int = 200,
    fan_budget: int = 50_000,
    phi0: Optional[PartialEdgeColoring] = None,
) -> PFan:
    """Extend a maximum multifan at a light max-degree center by
    (Delta-1)-neighbors whose missing colors stay disjoint from the rest
    under every explored fan-stable coloring."""
    prof = degree_profile(g)
    delta = prof.delta
    if prof.degrees[s1] != delta - 1:
        raise FanError("pseudo-fan spokes must have degree Delta-1")
    en = enumerate_colorings(g, g.edge_id(r, s1), delta, limit=fan_budget + 1)
    if not en.truncated:
        base = search_maximum_multifan(g, r, s1, mode="exhaustive", budget=0)
    else:
        base = search_maximum_multifan(
            g, r, s1, mode="reachability", budget=budget,
            phi0=phi0 if phi0 is not None else en.colorings[0],
        )
    norm = normalize_typical(g, base.phi, base.fan)
    base = MaxFanResult(norm.phi, norm.fan, base.status, base.explored)
    phi, fan = base.phi, base.fan
    if budget > 0:
        reached, expanded = _fan_stable_reachable(g, phi, fan, budget)
        p2 = "VERIFIED-WITHIN-BUDGET"
    else:
        reached, expanded = [phi], 0
        p2 = "UNKNOWN"
    ext, pruned = pfan_extension(g, fan, reached)
    return PFan(base, tuple(ext), p2, expanded, pruned, search_budget=budget)


def pfan_extension(
    g: SimpleGraph,
    fan: Multifan,
    reached: Sequence[PartialEdgeColoring],
) -> tuple[list[int], list[dict]]:
    """Greedy extension by (Delta-1)-neighbors of the center: a candidate
    joins when the enlarged vertex set stays elementary under every
    supplied coloring; otherwise it is pruned with the violating coloring
    as a replayable witness."""
    prof = degree_profile(g)
    delta = prof.delta
    r = fan.center
    in_fan = set(fan.vertex_set())
    ext: list[int] = []
    pruned: list[dict] = []
    for cand in g.adjacency[r]:
        if cand in in_fan or prof.degrees[cand] != delta - 1:
            continue
        group = fan.vertex_set() + tuple(ext) + (cand,)
        witness = None
        for phi2 in reached:
            if not phi2.is_elementary(group):
                witness = phi2
                break
        if witness is None:
            ext.append(cand)
        else:
            pruned.append(
                {
                    "vertex": cand,
                    "status": "VIOLATED",
                    "witness": witness.to_line(),
                }
            )
    return ext, pruned


def _pfan_violation_verdict(name, g, pfan, **detail) -> V.Verdict:
    """A violated pseudo-fan conclusion is FAIL evidence only when the base
    fan's maximality is certified and an intensified stability search still
    finds no counterexample to the extension's elementarity; otherwise the
    uncertified hypothesis makes the verdict CONDITIONAL."""
    if "reason" in detail:
        detail["violation"] = detail.pop("reason")
    if pfan.base.status != "EXACT":
        return V.conditional(
            name, "base fan maximality is only a lower bound", **detail
        )
    if pfan.extension:
        deep = max(10 * max(pfan.search_budget, 1), 2000)
        reached, _ = _fan_stable_reachable(g, pfan.base.phi, pfan.base.fan, deep)
        S = pfan.vertex_set()
        for phi2 in reached:
            if not phi2.is_elementary(S):
                return V.conditional(
                    name,
                    "extension is not a certified pseudo-fan; a deeper "
                    "stability search breaks its elementarity",
                    refuting_coloring=phi2.to_line(),
                    **detail,
                )
    return V.failed(name, **detail)


def verify_pfan_properties(
    g: SimpleGraph,
    pfan: PFan,
    critical: Optional[bool] = None,
    class_two: Optional[bool] = None,
) -> V.Verdict:
    """Extension spokes must sit on rotations whose members are linked with
    the center through color 1, and fan/extension missing-color pairs must
    ride one common chain through the center, meeting the spoke owner of
    the fan color before the center."""
    name = "pfan"
    phi, fan = pfan.base.phi, pfan.base.fan
    r = fan.center
    prof = degree_profile(g)
    delta = prof.delta
    if prof.degrees[r] != delta or r not in light_vertices(g):
        return V.inapplicable(name, "center is not a light max-degree vertex")
    gate = _edge_gate(name, g, fan.uncolored_edge, critical, class_two)
    if gate is not None:
        return gate
    if not pfan.extension:
        return V.passed(name, extension=[], note="empty extension")
    checked = {"a": 0, "b": 0}
    for v1 in pfan.extension:
        tau = phi.color_of(g.edge_id(r, v1))
        try:
            ts = build_tau_sequence(g, phi, fan, tau)
        except (TauError, MaximalityViolation) as exc:
            return _pfan_violation_verdict(
                name, g, pfan, part="a", vertex=v1, error=str(exc)
            )
        if ts.type != "A":
            return _pfan_violation_verdict(
                name, g, pfan, part="a", vertex=v1, sequence=ts.to_json(),
                coloring=phi.to_line(),
            )
        for vi in ts.vertices:
            mi = phi.missing_at(vi)[0]
            checked["a"] += 1
            if not are_linked(phi, r, vi, 1, mi):
                return _pfan_violation_verdict(
                    name, g, pfan, part="a", vertex=vi, colors=[1, mi],
                    coloring=phi.to_line(),
                )
    for si in fan.vertex_set():
        if si == r:
            continue
        for sj in pfan.extension:
            for gamma in phi.missing_at(si):
                for dlt in phi.missing_at(sj):
                    checked["b"] += 1
                    if not are_linked(phi, si, sj, gamma, dlt):
                        return _pfan_violation_verdict(
                            name, g, pfan, part="b", u=si, v=sj,
                            colors=[gamma, dlt],
                            reason="not one common chain",
                            coloring=phi.to_line(),
                        )
                    chain = phi.chain_at(si, gamma, dlt)
                    verts = list(chain.vertices)
                    if verts and verts[0] != si:
                        verts.reverse()
                    if r not in verts:
                        return _pfan_violation_verdict(
                            name, g, pfan, part="b", u=si, v=sj,
                            colors=[gamma, dlt],
                            reason="center off the chain",
                            coloring=phi.to_line(),
                        )
                    ze = phi.edge_with_color(r, gamma)
                    if ze is not None:
                        z = g.other_end(ze, r)
                        if verts.index(z) > verts.index(r):
                            return _pfan_violation_verdict(
                                name, g, pfan, part="b", u=si, v=sj,
                                colors=[gamma, dlt], z=z,
                                reason="chain meets center before the color owner",
                                coloring=phi.to_line(),
                            )
    return V.passed(name, extension=list(pfan.extension), checked=checked)


def verify_pfan_adjacency(
    g: SimpleGraph,
    pfan: PFan,
    critical: Optional[bool] = None,
    class_two: Optional[bool] = None,
) -> V.Verdict:
    """No vertex outside the center's closed neighborhood that touches the
    pseudo-fan may have degree Delta-1 (maximum degree >= 3)."""
    name = "pfan-adjacency"
    fan = pfan.base.fan
    r = fan.center
    prof = degree_profile(g)
    delta = prof.delta
    if delta < 3:
        return V.inapplicable(name, "needs maximum degree at least 3")
    if prof.degrees[r] != delta or r not in light_vertices(g):
        return V.inapplicable(name, "center is not a light max-degree vertex")
    gate = _edge_gate(name, g, fan.uncolored_edge, critical, class_two)
    if gate is not None:
        return gate
    closed = set(g.adjacency[r]) | {r}
    touching = set()
    for v in pfan.vertex_set():
        touching.update(g.adjacency[v])
    bad = [
        x
        for x in sorted(touching - closed)
        if prof.degrees[x] == delta - 1
    ]
    if bad:
        return _pfan_violation_verdict(
            name, g, pfan, vertices=bad, pfan_shape=pfan.to_json(),
            coloring=pfan.base.phi.to_line(),
        )
    return V.passed(name, checked=len(touching - closed))


def verify_fan_missing_r(
    g: SimpleGraph,
    phi: PartialEdgeColoring,
    fan: Multifan,
    maximum_status: str,
    critical: Optional[bool] = None,
    class_two: Optional[bool] = None,
) -> V.Verdict:
    """At a light center of degree Delta-1 with a maximum fan, no vertex
    off the closed neighborhood sharing a neighbor with s1 beyond the
    (Delta-1)-neighborhood may hold both of the center's missing colors
    (maximum degree >= 3)."""
    name = "fan-missing-r"
    r = fan.center
    s1 = fan.sequence[0]
    prof = degree_profile(g)
    delta = prof.delta
    if delta < 3:
        return V.inapplicable(name, "needs maximum degree at least 3")
    if prof.degrees[r] != delta - 1 or r not in light_vertices(g):
        return V.inapplicable(name, "center is not a light (Delta-1)-vertex")
    gate = _edge_gate(name, g, fan.uncolored_edge, critical, class_two)
    if gate is not None:
        return gate
    closed = set(g.adjacency[r]) | {r}
    low_closed = {r} | {
        w for w in g.adjacency[r] if prof.degrees[w] == delta - 1
    }
    rmask = phi.missing_mask(r)
    bad = []
    for x in range(g.n):
        if x in closed:
            continue
        shared = set(g.adjacency[x]) & set(g.adjacency[s1])
        if not (shared - low_closed):
            continue
        if phi.missing_mask(x) & rmask == rmask:
            bad.append(x)
    if bad:
        if maximum_status != "EXACT":
            return V.conditional(
                name,
                "fan maximality is only a lower bound; containment failed",
                vertices=bad,
                coloring=phi.to_line(),
            )
        return V.failed(name, vertices=bad, coloring=phi.to_line())
    if maximum_status != "EXACT":
        return V.conditional(name, "fan maximality is only a lower bound")
    return V.passed(name, missing_r=list(phi.missing_at(r)))


def _edge_gate(name, g, e, critical, class_two) -> Optional[V.Verdict]:
    if class_two is None or critical is None:
        from .solver import is_critical_edge

        cv = chromatic_index(g)
        if cv.status != "ok":
            return V.unknown(name, "chromatic index undecided within budget")
        if class_two is None:
            class_two = cv.cls == "two"
        if critical is None:
            critical = class_two and is_critical_edge(g, e)
    if not class_two:
        return V.inapplicable(name, "graph is class 1")
    if not critical:
        return V.inapplicable(name, "uncolored edge is not critical")
    return None


# -- adjacency lemma and theorem-level checks -----------------------------------


def check_val(g: SimpleGraph, budget: Optional[int] = None) -> V.Verdict:
    """Every critical edge xy: x has at least Delta - d(y) + 1 max-degree
    neighbors besides y (and symmetrically)."""
    name = "val"
    cv = chromatic_index(g, budget)
    if cv.status != "ok":
        return V.unknown(name, "chromatic index undecided within budget")
    if cv.cls != "two":
        return V.inapplicable(name, "graph is class 1")
    prof = degree_profile(g)
    delta = prof.delta
    dv = set(prof.delta_vertices)
    try:
        crit = critical_edges(g, budget)
    except BudgetExceeded:
        return V.unknown(name, "criticality undecided within budget")
    checked = 0
    for e in crit:
        x, y = g.endpoints(e)
        for a, b in ((x, y), (y, x)):
            checked += 1
            have = len((set(g.adjacency[a]) & dv) - {b})
            need = delta - prof.degrees[b] + 1
            if have < need:
                return V.failed(
                    name, edge=[x, y], vertex=a, have=have, need=need
                )
    return V.passed(name, critical_edges=len(crit), checked=checked)


def check_parity(g: SimpleGraph, budget: Optional[int] = None) -> V.Verdict:
    """The solver witness must satisfy the per-color parity bound."""
    name = "parity"
    cv = chromatic_index(g, budget)
    if cv.status != "ok":
        return V.unknown(name, "chromatic index undecided within budget")
    rep = parity_check(g, cv.witness)
    if rep.ok:
        return V.passed(name, counts=rep.counts, chi_prime=cv.chi_prime)
    return V.failed(name, violations=rep.violations, counts=rep.counts)


def _delta_critical_gate(name, g, budget):
    cv = chromatic_index(g, budget)
    if cv.status != "ok":
        return None, V.unknown(name, "chromatic index undecided within budget")
    if cv.cls != "two":
        return None, V.inapplicable(name, "graph is class 1")
    from .solver import is_delta_critical

    try:
        if not is_delta_critical(g, budget):
            return None, V.inapplicable(name, "graph is not edge-critical")
    except BudgetExceeded:
        return None, V.unknown(name, "criticality undecided within budget")
    return cv, None


def check_theorem(name: str, g: SimpleGraph, budget: Optional[int] = None) -> V.Verdict:
    if name not in THEOREM_NAMES:
        raise ValueError(f"unknown theorem check {name!r}")
    prof = degree_profile(g)
    delta = prof.delta
    n = g.n
    if name == "s1-adj":
        cv = chromatic_index(g, budget)
        if cv.status != "ok":
            return V.unknown(name, "chromatic index undecided within budget")
        if cv.cls != "two":
            return V.inapplicable(name, "graph is class 1")
        dv = set(prof.delta_vertices)
        lv = set(light_vertices(g))
        from .solver import is_critical_edge

        instances = 0
        for r in sorted(dv & lv):
            for s in g.adjacency[r]:
                if prof.degrees[s] >= delta:
                    continue
                if not is_critical_edge(g, g.edge_id(r, s), budget):
                    continue
                instances += 1
                outside = set(g.adjacency[s]) - set(g.adjacency[r])
                bad = [x for x in sorted(outside) if prof.degrees[x] != delta]
                if bad:
                    return V.failed(name, r=r, s=s, vertices=bad)
        if instances == 0:
            return V.inapplicable(name, "no light max-degree center with a critical low edge")
        return V.passed(name, instances=instances)
    if name == "longk":
        cv = chromatic_index(g, budget)
        if cv.status != "ok":
            return V.unknown(name, "chromatic index undecided within budget")
        if cv.cls != "two":
            return V.inapplicable(name, "graph is class 1")
        dv = set(prof.delta_vertices)
        lv = set(light_vertices(g))
        nd = {v: set(g.adjacency[v]) for v in range(n)}
        from .solver import is_critical_edge

        instances = 0
        for r in sorted(dv & lv):
            n_delta_r = {w for w in nd[r] if prof.degrees[w] == delta}
            allowed = nd[r] - n_delta_r
            for s in nd[r]:
                if prof.degrees[s] != delta - 1:
                    continue
                if not is_critical_edge(g, g.edge_id(r, s), budget):
                    continue
                for x in range(n):
                    if x == r or x in nd[r]:
                        continue
                    if prof.degrees[x] > delta - 3:
                        continue
                    instances += 1
                    bad = sorted((nd[x] & nd[s]) - allowed)
                    if bad:
                        return V.failed(name, r=r, s=s, x=x, vertices=bad)
        if instances == 0:
            return V.inapplicable(name, "hypotheses never jointly satisfied")
        return V.passed(name, instances=instances)
    # longk2 / main need edge-criticality of the whole graph
    _, gate = _delta_critical_gate(name, g, budget)
    if gate is not None:
        return gate
    prof = degree_profile(g)
    if name == "longk2":
        if not (2 * delta > n + 2):
            return V.inapplicable(name, "maximum degree not above n/2 + 1")
        if prof.core_min_degree > 2:
            return V.inapplicable(name, "core minimum degree above 2")
        if n % 2 == 1:
            return V.passed(name, n=n)
        return V.failed(name, n=n, reason="even order under the hypotheses")
    if name == "main":
        if prof.core_min_degree > 2:
            return V.inapplicable(name, "core minimum degree above 2")
        if not (2 * delta > n + 2):
            return V.inapplicable(name, "maximum degree not above n/2 + 1")
        if is_overfull(g):
            return V.passed(name, edges=len(g.edges), delta=delta)
        return V.failed(name, edges=len(g.edges), delta=delta, n=n)
    raise AssertionError(name)


def check_conjecture(name: str, g: SimpleGraph, budget: Optional[int] = None) -> V.Verdict:
    if name not in CONJECTURE_NAMES:
        raise ValueError(f"unknown conjecture check {name!r}")
    check = "conj-" + name
    _, gate = _delta_critical_gate(check, g, budget)
    if gate is not None:
        return gate
    prof = degree_profile(g)
    delta, n = prof.delta, g.n
    if name == "just-overfull":
        if not (2 * delta >= n):
            return V.inapplicable(check, "maximum degree below n/2")
        if is_just_overfull(g):
            return V.passed(check, edges=len(g.edges))
        # counterexample candidate: re-verify with a second edge order
        confirm = _reverify_class_two(g, budget)
        return V.failed(
            check, edges=len(g.edges), delta=delta, n=n,
            reverified_class_two=confirm,
        )
    if not (3 * delta > n):
        return V.inapplicable(check, "maximum degree not above n/3")
    if is_overfull(g):
        return V.passed(check, edges=len(g.edges))
    confirm = _reverify_class_two(g, budget)
    return V.failed(
        check, edges=len(g.edges), delta=delta, n=n,
        reverified_class_two=confirm,
    )


def _reverify_class_two(g: SimpleGraph, budget: Optional[int]) -> bool:
    """Second solver pass over a reversed edge order; a FAIL on a
    conjecture check is trusted only when this agrees."""
    relabeled = SimpleGraph(g.n, [(g.n - 1 - u, g.n - 1 - v) for u, v in g.edges])
    cv = chromatic_index(relabeled, budget)
    return cv.status == "ok" and cv.cls == "two"


# -- per-graph verification ------------------------------------------------------


@dataclass
class ScanConfig:
    checks: tuple[str, ...] = GRAPH_CHECKS
    budget: Optional[int] = None          # solver node budget
    mode: str = "exhaustive"              # maximum-fan mode
    fan_budget: int = 2000                # reachability expansions / enum cap
    max_colorings: int = 10               # colorings sampled per critical edge
    enum_cap: int = 200                   # below this, use every coloring
    witness_budget: int = 800             # tau-witness fallback search
    seed: int = 0

    def to_json(self) -> dict:
        return {
            "checks": list(self.checks),
            "budget": self.budget,
            "mode": self.mode,
            "fan_budget": self.fan_budget,
            "max_colorings": self.max_colorings,
            "enum_cap": self.enum_cap,
            "witness_budget": self.witness_budget,
            "seed": self.seed,
        }


def normalize_checks(spec: str | Sequence[str]) -> tuple[str, ...]:
    """Expand a --checks argument: names, or the groups all / graph /
    lemmas / theorems / conjectures."""
    if isinstance(spec, str):
        parts = [p.strip() for p in spec.split(",") if p.strip()]
    else:
        parts = list(spec)
    out: list[str] = []
    for p in parts:
        if p == "all":
            out.extend(ALL_CHECKS)
        elif p == "graph":
            out.extend(GRAPH_CHECKS)
        elif p == "lemmas":
            out.extend(LEMMA_CHECKS)
        elif p == "theorems":
            out.extend(THEOREM_NAMES)
        elif p == "conjectures":
            out.extend("conj-" + c for c in CONJECTURE_NAMES)
        elif p in ALL_CHECKS:
            out.append(p)
        else:
            raise ValueError(f"unknown check {p!r}")
    seen = set()
    uniq = []
    for c in out:
        if c not in seen:
            seen.add(c)
            uniq.append(c)
    return tuple(uniq)


def _coloring_sample(g, e, k, cfg) -> tuple[list[PartialEdgeColoring], bool]:
    """Every coloring when the space is small, else the first
    max_colorings in enumeration order. Returns (sample, exhaustive)."""
    en = enumerate_colorings(g, e, k, limit=cfg.enum_cap + 1)
    if not en.truncated:
        return en.colorings, True
    return en.colorings[: cfg.max_colorings], False


def _max_fan_for(g, r, s1, cfg) -> MaxFanResult:
    e = g.edge_id(r, s1)
    k = degree_profile(g).delta
    cnt_cap = cfg.fan_budget
    en = enumerate_colorings(g, e, k, limit=cnt_cap + 1)
    if not en.truncated:
        return search_maximum_multifan(g, r, s1, mode="exhaustive", budget=0)
    phi0 = en.colorings[0]
    return search_maximum_multifan(
        g, r, s1, mode="reachability", budget=cfg.fan_budget, phi0=phi0
    )


def run_lemma_suite(
    g: SimpleGraph, cfg: ScanConfig, checks: Sequence[str]
) -> dict[str, list[V.Verdict]]:
    """Run the fan/recoloring checks over every critical edge, both
    orientations, and a deterministic sample of colorings."""
    want = set(checks)
    out: dict[str, list[V.Verdict]] = {c: [] for c in want}
    cv = chromatic_index(g, cfg.budget)
    if cv.status != "ok":
        for c in want:
            out[c].append(V.unknown(c, "chromatic index undecided"))
        return out
    class_two = cv.cls == "two"
    if not class_two:
        for c in want:
            out[c].append(V.inapplicable(c, "graph is class 1"))
        return out
    try:
        crit = critical_edges(g, cfg.budget)
    except BudgetExceeded:
        for c in want:
            out[c].append(V.unknown(c, "criticality undecided"))
        return out
    if not crit:
        for c in want:
            out[c].append(V.inapplicable(c, "no critical edges"))
        return out
    delta = degree_profile(g).delta
    for e in crit:
        u, v = g.endpoints(e)
        for r, s1 in ((u, v), (v, u)):
            phis, exhaustive = _coloring_sample(g, e, delta, cfg)
            prof = degree_profile(g)
            # the tau/shifting/pseudo-fan machinery lives at a light center
            # whose working spoke has degree Delta-1
            typical_setting = (
                r in light_vertices(g) and prof.degrees[s1] == delta - 1
            )
            maxres = None
            max_checks = {"rs1-linkage", "tau-unique", "tau-witnesses", "pfan",
                          "pfan-adjacency", "fan-missing-r"}
            if want & max_checks:
                if typical_setting:
                    maxres = _max_fan_for(g, r, s1, cfg)
                else:
                    reason = "center is not light with a (Delta-1)-degree spoke"
                    for c in want & max_checks:
                        out[c].append(V.inapplicable(c, reason))
            for phi in phis:
                fan = grow_multifan(g, phi, r, s1)
                if "fan-elementary" in want:
                    out["fan-elementary"].append(
                        verify_fan_elementary(g, phi, fan, critical=True, class_two=True)
                    )
                if "fan-linkage" in want:
                    out["fan-linkage"].append(
                        verify_fan_linkage(g, phi, fan, critical=True, class_two=True)
                    )
                if "kierstead" in want:
                    kp = grow_kierstead_path(g, phi, r, s1, max_len=4)
                    out["kierstead"].append(
                        verify_kp_elementary(g, phi, kp, critical=True, class_two=True)
                    )
                if want & {"stable-swaps", "vf-stable-swaps"}:
                    try:
                        norm = normalize_typical(g, phi, fan)
                    except FanError as exc:
                        note = V.inapplicable(
                            "stable-swaps", f"not normalizable: {exc}"
                        )
                        if "stable-swaps" in want:
                            out["stable-swaps"].append(note)
                        if "vf-stable-swaps" in want:
                            out["vf-stable-swaps"].append(
                                V.inapplicable("vf-stable-swaps", f"not normalizable: {exc}")
                            )
                    else:
                        if "stable-swaps" in want:
                            out["stable-swaps"].append(
                                verify_stable_swaps(
                                    g, norm.phi, norm.fan, critical=True, class_two=True
                                )
                            )
                        if "vf-stable-swaps" in want:
                            out["vf-stable-swaps"].append(
                                verify_vf_stable_swaps(
                                    g, norm.phi, norm.fan, critical=True, class_two=True
                                )
                            )
            if maxres is None:
                continue
            mphi, mfan = maxres.phi, maxres.fan
            try:
                nf = normalize_typical(g, mphi, mfan)
                mphi, mfan = nf.phi, nf.fan
            except FanError as exc:
                reason = f"maximum fan not normalizable: {exc}"
                for c in want & max_checks:
                    out[c].append(V.inapplicable(c, reason))
                continue
            if "rs1-linkage" in want:
                out["rs1-linkage"].append(
                    verify_rs1_linkage(g, mphi, mfan, maximum_status=maxres.status)
                )
            if "tau-unique" in want:
                out["tau-unique"].append(
                    _check_tau_unique(g, mphi, mfan, maxres.status)
                )
            if "tau-witnesses" in want:
                out["tau-witnesses"].append(
                    _check_tau_witnesses(g, mphi, mfan, maxres.status, cfg)
                )
            if "pfan" in want or "pfan-adjacency" in want:
                if prof.degrees[r] == delta:
                    try:
                        pf = grow_pfan(g, r, s1, budget=cfg.fan_budget // 10,
                                       fan_budget=cfg.fan_budget)
                    except FanError as exc:
                        pf = None
                        reason = f"pseudo-fan not constructible: {exc}"
                    if pf is not None:
                        if "pfan" in want:
                            out["pfan"].append(
                                verify_pfan_properties(g, pf, critical=True, class_two=True)
                            )
                        if "pfan-adjacency" in want:
                            out["pfan-adjacency"].append(
                                verify_pfan_adjacency(g, pf, critical=True, class_two=True)
                            )
                    else:
                        if "pfan" in want:
                            out["pfan"].append(V.inapplicable("pfan", reason))
                        if "pfan-adjacency" in want:
                            out["pfan-adjacency"].append(
                                V.inapplicable("pfan-adjacency", reason)
                            )
                else:
                    reason = "center is not a max-degree vertex"
                    if "pfan" in want:
                        out["pfan"].append(V.inapplicable("pfan", reason))
                    if "pfan-adjacency" in want:
                        out["pfan-adjacency"].append(
                            V.inapplicable("pfan-adjacency", reason)
                        )
            if "fan-missing-r" in want:
                out["fan-missing-r"].append(
                    verify_fan_missing_r(
                        g, mphi, mfan, maxres.status, critical=True, class_two=True
                    )
                )
    return out


def _check_tau_unique(g, phi, fan, status) -> V.Verdict:
    """Constructive builder vs clause-by-clause enumeration: exactly one
    sequence per eligible color, identical content, exactly one type tag."""
    name = "tau-unique"
    if fan.typical is None:
        return V.inapplicable(name, "fan is not typical")
    fanmiss = fan_missing_union(phi, fan)
    taus = [t for t in range(1, phi.k + 1) if t not in fanmiss]
    if not taus:
        verdict = V.passed(name, taus=[], note="no eligible colors")
        if status != "EXACT":
            return V.conditional(name, "fan maximality is only a lower bound")
        return verdict
    for tau in taus:
        try:
            built = build_tau_sequence(g, phi, fan, tau)
        except MaximalityViolation as exc:
            if status != "EXACT":
                return V.conditional(
                    name, f"maximality evidence for tau={tau}: {exc}"
                )
            return V.failed(name, tau=tau, reason=str(exc), coloring=phi.to_line())
        derived = tau_sequence_by_definition(g, phi, fan, tau)
        if len(derived) != 1 or derived[0].to_json() != built.to_json():
            return V.failed(
                name, tau=tau, built=built.to_json(),
                derived=[d.to_json() for d in derived],
                coloring=phi.to_line(),
            )
    if status != "EXACT":
        return V.conditional(name, "fan maximality is only a lower bound", taus=taus)
    return V.passed(name, taus=taus)


def _check_tau_witnesses(g, phi, fan, status, cfg) -> V.Verdict:
    """Sweep every eligible (x, tau, item); WITNESS transcripts must replay
    and respect their avoidance sets; FAIL outcomes fail the check."""
    name = "tau-witnesses"
    if fan.typical is None:
        return V.inapplicable(name, "fan is not typical")
    delta = degree_profile(g).delta
    fanmiss = fan_missing_union(phi, fan)
    taus = [t for t in range(1, phi.k + 1) if t not in fanmiss]
    r = fan.center
    closed = set(g.adjacency[r]) | {r}
    outcomes = {"WITNESS": 0, "EXCLUDED": 0, "UNKNOWN": 0, "INAPPLICABLE": 0}
    if not taus:
        verdict = V.passed(name, instances=0, note="no eligible colors")
        if status != "EXACT":
            return V.conditional(name, "fan maximality is only a lower bound")
        return verdict
    for tau in taus:
        for x in range(g.n):
            if x in closed:
                continue
            if not (phi.misses(x, tau) or phi.misses(x, delta)):
                continue
            for item in WITNESS_ITEMS:
                if item in ("i", "ii", "vii") and not phi.misses(x, tau):
                    continue
                try:
                    res = witness_tau_item(
                        item, g, phi, fan, x, tau,
                        search_budget=cfg.witness_budget,
                        maximum_status=status,
                    )
                except (TauError, FanError) as exc:
                    outcomes["INAPPLICABLE"] += 1
                    continue
                if res.status == "FAIL":
                    return V.failed(
                        name, item=item, x=x, tau=tau,
                        detail=res.detail, coloring=phi.to_line(),
                    )
                if res.status == "WITNESS":
                    ok_replay = (
                        res.transcript.replay(phi).signature()
                        == res.phi.signature()
                    )
                    ok_avoid = is_avoiding(
                        res.transcript, sorted(witness_avoid_set(item, tau, delta))
                    )
                    if not (ok_replay and ok_avoid):
                        return V.failed(
                            name, item=item, x=x, tau=tau,
                            replay_ok=ok_replay, avoidance_ok=ok_avoid,
                            transcript=res.transcript.to_json(),
                            coloring=phi.to_line(),
                        )
                outcomes[res.status] += 1
    if status != "EXACT":
        return V.conditional(
            name, "fan maximality is only a lower bound", outcomes=outcomes
        )
    return V.passed(name, outcomes=outcomes)


@dataclass
class VerificationReport:
    line_no: int
    graph6: str
    error: Optional[str] = None
    meta: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)  # name -> list of verdict dicts
    elapsed: float = 0.0

    def worst(self) -> str:
        rank = {V.FAIL: 4, V.UNKNOWN: 3, V.CONDITIONAL: 3, V.PASS: 1, V.INAPPLICABLE: 0}
        worst = V.INAPPLICABLE
        for vs in self.checks.values():
            for vd in vs:
                if rank[vd["status"]] > rank[worst]:
                    worst = vd["status"]
        return worst

    def to_json(self) -> dict:
        return {
            "line_no": self.line_no,
            "graph6": self.graph6,
            "error": self.error,
            "meta": self.meta,
            "checks": self.checks,
        }


def run_graph_checks(
    line_no: int, line: str, cfg: ScanConfig
) -> VerificationReport:
    t0 = time.time()
    try:
        g = from_graph6(line)
    except Exception as exc:
        return VerificationReport(line_no, line.strip(), error=str(exc))
    rep = VerificationReport(line_no, to_graph6(g))
    prof = degree_profile(g)
    meta = {
        "n": g.n,
        "m": len(g.edges),
        "delta": prof.delta,
        "core_min_degree": prof.core_min_degree,
        "core_max_degree": prof.core_max_degree,
    }
    try:
        from .graphs import is_core_acyclic

        meta["core_acyclic"] = is_core_acyclic(g)
        if len(g.edges) > 0 and g.n >= 2:
            cv = chromatic_index(g, cfg.budget)
            meta["chi_prime"] = cv.chi_prime
            meta["class"] = cv.cls
            meta["overfull"] = is_overfull(g)
            meta["just_overfull"] = is_just_overfull(g)
            meta["connected"] = g.is_connected()
        rep.meta = meta
        results: dict[str, list[dict]] = {}
        graph_level = {
            "val": lambda: check_val(g, cfg.budget),
            "parity": lambda: check_parity(g, cfg.budget),
        }
        for t in THEOREM_NAMES:
            graph_level[t] = (lambda t=t: check_theorem(t, g, cfg.budget))
        for c in CONJECTURE_NAMES:
            graph_level["conj-" + c] = (
                lambda c=c: check_conjecture(c, g, cfg.budget)
            )
        lemma_wanted = [c for c in cfg.checks if c in LEMMA_CHECKS]
        for name in cfg.checks:
            if name in graph_level:
                if len(g.edges) == 0:
                    results[name] = [
                        V.inapplicable(name, "graph has no edges").to_json()
                    ]
                else:
                    results[name] = [graph_level[name]().to_json()]
        if lemma_wanted and len(g.edges) > 0:
            suite = run_lemma_suite(g, cfg, lemma_wanted)
            for name, verdicts in suite.items():
                results[name] = [vd.to_json() for vd in verdicts]
        rep.checks = results
    except Exception as exc:  # surfaced per graph, scan continues
        rep.error = f"{type(exc).__name__}: {exc}"
    rep.elapsed = time.time() - t0
    return rep


def _worker(args):
    line_no, line, cfg_json = args
    cfg = ScanConfig(**cfg_json)
    cfg.checks = tuple(cfg.checks)
    rep = run_graph_checks(line_no, line, cfg)
    return rep.line_no, json.dumps(rep.to_json(), sort_keys=True)


def scan_corpus(
    lines: Iterable[str],
    cfg: ScanConfig,
    workers: int = 1,
) -> tuple[list[dict], dict]:
    """One report per input line, content independent of worker count;
    summary aggregates verdict counts per check."""
    tasks = []
    for i, line in enumerate(lines):
        s = line.strip()
        if not s or s == ">>graph6<<":
            continue
        tasks.append((i, s, _cfg_json(cfg)))
    if workers > 1 and len(tasks) > 1:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(workers) as pool:
            packed = pool.map(_worker, tasks, chunksize=16)
    else:
        packed = [_worker(t) for t in tasks]
    packed.sort(key=lambda p: p[0])
    reports = [json.loads(s) for _, s in packed]
    return reports, summarize(reports, cfg)


def _cfg_json(cfg: ScanConfig) -> dict:
    return {
        "checks": tuple(cfg.checks),
        "budget": cfg.budget,
        "mode": cfg.mode,
        "fan_budget": cfg.fan_budget,
        "max_colorings": cfg.max_colorings,
        "enum_cap": cfg.enum_cap,
        "witness_budget": cfg.witness_budget,
        "seed": cfg.seed,
    }


def summarize(reports: list[dict], cfg: Optional[ScanConfig] = None) -> dict:
    counts: dict[str, dict[str, int]] = {}
    errors = 0
    for rep in reports:
        if rep.get("error"):
            errors += 1
            continue
        for name, verdicts in rep.get("checks", {}).items():
            slot = counts.setdefault(
                name,
                {V.PASS: 0, V.FAIL: 0, V.INAPPLICABLE: 0, V.UNKNOWN: 0, V.CONDITIONAL: 0},
            )
            for vd in verdicts:
                slot[vd["status"]] += 1
    return {
        "graphs": len(reports),
        "errors": errors,
        "checks": counts,
        "config": cfg.to_json() if cfg else None,
    }


def summary_tsv(summary: dict) -> str:
    cols = [V.PASS, V.FAIL, V.INAPPLICABLE, V.UNKNOWN, V.CONDITIONAL]
    lines = ["check\t" + "\t".join(cols)]
    for name in sorted(summary["checks"]):
        row = summary["checks"][name]
        lines.append(name + "\t" + "\t".join(str(row[c]) for c in cols))
    return "\n".join(lines) + "\n"


def exit_code(summary: dict, reports: list[dict]) -> int:
    """0 all PASS/INAPPLICABLE; 1 any FAIL; 2 any UNKNOWN/CONDITIONAL
    without FAIL; 3 any per-line operational error."""
    if summary.get("errors"):
        return 3
    any_fail = any(
        row[V.FAIL] for row in summary["checks"].values()
    )
    if any_fail:
        return 1
    any_open = any(
        row[V.UNKNOWN] + row[V.CONDITIONAL] for row in summary["checks"].values()
    )
    return 2 if any_open else 0
