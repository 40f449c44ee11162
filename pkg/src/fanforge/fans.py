"""Multifans, Kierstead paths, typical normalization, and their verifiers.

A multifan at center r with uncolored edge rs1 is a sequence
(r, rs1, s1, rs2, s2, ...) of distinct neighbors where each later spoke's
edge color is missing at some earlier spoke. Grown spokes must not be
maximum-degree vertices; the base vertex s1 is always admitted (the
degenerate fixture graphs need it even when every vertex has maximum
degree).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import verdicts as V
from .colorings import PartialEdgeColoring, are_linked, kempe_swap
from .graphs import SimpleGraph, degree_profile, light_vertices
from .solver import enumerate_colorings, iter_colorings


class FanError(ValueError):
    pass


@dataclass(frozen=True)
class TypicalForm:
    """Normalized color labeling: 1 missing at r, {2, Delta} missing at s1,
    spokes split into the chain rooted at 2 and the chain rooted at Delta."""

    alpha: int
    beta: int
    two_inducing: tuple[int, ...]    # s_2 .. s_alpha
    delta_inducing: tuple[int, ...]  # s_{alpha+1} .. s_beta


@dataclass(frozen=True)
class FanContext:
    """Neighborhood bookkeeping around a light center: the two max-degree
    neighbors and the (Delta-1)-degree neighbors, q = d(r) - 2."""

    delta_neighbors: tuple[int, ...]
    low_neighbors: tuple[int, ...]
    q: int


@dataclass
class Multifan:
    center: int
    uncolored_edge: int
    sequence: tuple[int, ...]  # (s1, ..., sp)
    edge_colors: dict[int, int]  # spoke vertex -> color of r-spoke edge (s1 absent)
    missing: dict[int, tuple[int, ...]]  # snapshot of missing sets on V(F)
    typical: Optional[TypicalForm] = None
    context: Optional[FanContext] = None

    def vertex_set(self) -> tuple[int, ...]:
        return (self.center,) + self.sequence

    def spoke_edges(self, g: SimpleGraph) -> tuple[int, ...]:
        return tuple(g.edge_id(self.center, s) for s in self.sequence)

    def size(self) -> int:
        return 1 + len(self.sequence)

    def to_json(self) -> dict:
        d = {
            "center": self.center,
            "uncolored_edge": self.uncolored_edge,
            "sequence": list(self.sequence),
            "edge_colors": {str(s): c for s, c in self.edge_colors.items()},
            "missing": {str(v): list(m) for v, m in self.missing.items()},
        }
        if self.typical:
            d["typical"] = {
                "alpha": self.typical.alpha,
                "beta": self.typical.beta,
                "two_inducing": list(self.typical.two_inducing),
                "delta_inducing": list(self.typical.delta_inducing),
            }
        return d


@dataclass
class KiersteadPath:
    """Path sequence (v0, v0v1, v1, ..., vp) whose later edge colors are
    missing at vertices at least two steps back."""

    vertices: tuple[int, ...]
    uncolored_edge: int

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "uncolored_edge": self.uncolored_edge}


@dataclass(frozen=True)
class InducingMap:
    """For each color missing on the fan spokes, which missing color of s1
    roots it, together with the spoke subsequence that carries it there."""

    entries: dict[int, tuple[str, tuple[int, ...]]]  # color -> ("2"|"delta", vertices)

    def root_of(self, color: int) -> str:
        return self.entries[color][0]

    def to_json(self) -> dict:
        return {
            str(c): {"root": r, "sequence": list(seq)}
            for c, (r, seq) in self.entries.items()
        }


def _fan_context(g: SimpleGraph, r: int) -> FanContext:
    prof = degree_profile(g)
    delta = prof.delta
    dn = tuple(w for w in g.adjacency[r] if prof.degrees[w] == delta)
    ln = tuple(w for w in g.adjacency[r] if prof.degrees[w] == delta - 1)
    return FanContext(dn, ln, g.degree(r) - 2)


def grow_multifan(g: SimpleGraph, phi: PartialEdgeColoring, r: int, s1: int) -> Multifan:
    """Greedily grow the inclusion-maximal multifan at r from the uncolored
    edge rs1. Growth adds only non-maximum-degree spokes; ties break on
    lowest edge color, then lowest vertex id. The maximal spoke set is
    unique (eligibility never disappears as the fan grows), so the greedy
    order only affects sequence labels.
    """
    e = g.edge_id(r, s1)
    if phi.uncolored != e:
        raise FanError(f"edge {r}-{s1} is not the uncolored edge of the coloring")
    prof = degree_profile(g)
    delta = prof.delta
    seq = [s1]
    member = {s1}
    missing_union = phi.missing_mask(s1)
    while True:
        best = None
        for w in g.adjacency[r]:
            if w in member or prof.degrees[w] == delta:
                continue
            c = phi.color_of(g.edge_id(r, w))
            if c is None:
                continue
            if missing_union >> (c - 1) & 1:
                key = (c, w)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, w = best
        seq.append(w)
        member.add(w)
        missing_union |= phi.missing_mask(w)
    return Multifan(
        center=r,
        uncolored_edge=e,
        sequence=tuple(seq),
        edge_colors={
            s: phi.color_of(g.edge_id(r, s)) for s in seq[1:]
        },
        missing={v: phi.missing_at(v) for v in [r] + seq},
        context=_fan_context(g, r),
    )


def check_multifan(
    g: SimpleGraph, phi: PartialEdgeColoring, fan: Multifan
) -> list[str]:
    """Structural violations of the fan conditions; empty list when valid.

    s1 being a maximum-degree vertex is reported as a note by callers, not
    a violation (degenerate fixtures rely on it).
    """
    out = []
    r = fan.center
    seq = fan.sequence
    if len(set(seq)) != len(seq) or r in seq:
        out.append("vertices not distinct")
    if phi.uncolored != fan.uncolored_edge:
        out.append("uncolored edge mismatch")
    u, v = g.endpoints(fan.uncolored_edge)
    if {u, v} != {r, seq[0]}:
        out.append("uncolored edge does not join center and s1")
    prof = degree_profile(g)
    missing_union = phi.missing_mask(seq[0])
    for i, s in enumerate(seq):
        if not g.has_edge(r, s):
            out.append(f"s{i+1}={s} not adjacent to center")
            continue
        if i == 0:
            continue
        if prof.degrees[s] == prof.delta:
            out.append(f"spoke {s} is a maximum-degree vertex")
        c = phi.color_of(g.edge_id(r, s))
        if c is None:
            out.append(f"spoke edge r-{s} uncolored")
        elif not (missing_union >> (c - 1)) & 1:
            out.append(f"color {c} of spoke r-{s} missing at no earlier spoke")
        missing_union |= phi.missing_mask(s)
    return out


# -- typical normalization ---------------------------------------------------


@dataclass
class NormalizedFan:
    phi: PartialEdgeColoring
    fan: Multifan
    color_map: dict[int, int]  # old color -> new color


def _fan_chains(
    phi: PartialEdgeColoring, g: SimpleGraph, fan: Multifan
) -> tuple[dict[int, list[int]], tuple[int, int]]:
    """Split the spokes s2..sp into the two chains hanging off s1's missing
    colors. Requires elementary V(F) and singleton missing sets beyond s1."""
    r = fan.center
    s1 = fan.sequence[0]
    roots = phi.missing_at(s1)
    if len(roots) != 2:
        raise FanError(f"|missing(s1)| = {len(roots)}, need exactly 2")
    edge_color_to_vertex = {}
    for s in fan.sequence[1:]:
        c = phi.color_of(g.edge_id(r, s))
        if c in edge_color_to_vertex:
            raise FanError("two spokes share an edge color")
        edge_color_to_vertex[c] = s
    chains: dict[int, list[int]] = {}
    covered = set()
    for root in roots:
        chain = []
        c = root
        while c in edge_color_to_vertex:
            s = edge_color_to_vertex[c]
            if s in covered:
                raise FanError("spoke reachable from both roots")
            chain.append(s)
            covered.add(s)
            ms = phi.missing_at(s)
            if len(ms) != 1:
                raise FanError(f"spoke {s} misses {len(ms)} colors, need 1")
            c = ms[0]
        chains[root] = chain
    if covered != set(fan.sequence[1:]):
        raise FanError("spokes not covered by the two root chains")
    return chains, (roots[0], roots[1])


def normalize_typical(
    g: SimpleGraph, phi: PartialEdgeColoring, fan: Multifan
) -> NormalizedFan:
    """Relabel colors (a bijection applied to the whole coloring) and
    reorder the spokes so the fan takes the normalized form: 1 missing at
    r, missing(s1) = {2, Delta}, spoke i carrying color i (color Delta at
    the start of the second chain) and missing i+1.

    Deterministic; applying it to an already-normalized fan is the
    identity. Errors when V(F) is not elementary or |missing(s1)| != 2.
    """
    r = fan.center
    s1 = fan.sequence[0]
    k = phi.k
    prof = degree_profile(g)
    delta = prof.delta
    if r not in light_vertices(g):
        raise FanError("center is not light")
    for s in fan.sequence:
        if prof.degrees[s] != delta - 1:
            raise FanError(
                f"spoke {s} has degree {prof.degrees[s]}, "
                f"need maximum degree minus one = {delta - 1}"
            )
    if not phi.is_elementary(fan.vertex_set()):
        raise FanError("fan vertex set is not elementary")
    chains, roots = _fan_chains(phi, g, fan)
    a, b = roots
    # the chain labeled "2" comes first; prefer a nonempty chain, then the
    # lower original root color
    if chains[a] and not chains[b]:
        root2, rootd = a, b
    elif chains[b] and not chains[a]:
        root2, rootd = b, a
    else:
        root2, rootd = min(a, b), max(a, b)
    two_chain = chains[root2]
    delta_chain = chains[rootd]
    new_seq = [s1] + two_chain + delta_chain
    alpha = 1 + len(two_chain)
    beta = len(new_seq)

    cmap: dict[int, int] = {}

    def assign(old: int, new: int):
        if cmap.get(old, new) != new:
            raise FanError("inconsistent color relabeling")
        cmap[old] = new

    assign(min(phi.missing_at(r)), 1)
    assign(root2, 2)
    assign(rootd, delta)
    for pos, s in enumerate(two_chain, start=2):
        assign(phi.missing_at(s)[0], pos + 1)
    for pos, s in enumerate(delta_chain, start=alpha + 1):
        assign(phi.missing_at(s)[0], pos + 1)
    used_new = set(cmap.values())
    free_new = [c for c in range(1, k + 1) if c not in used_new]
    free_old = [c for c in range(1, k + 1) if c not in cmap]
    for old, new in zip(free_old, free_new):
        cmap[old] = new

    colors = [None if c is None else cmap[c] for c in phi.assignment]
    phi2 = PartialEdgeColoring.from_assignment(g, k, colors, uncolored=phi.uncolored)
    fan2 = Multifan(
        center=r,
        uncolored_edge=fan.uncolored_edge,
        sequence=tuple(new_seq),
        edge_colors={s: phi2.color_of(g.edge_id(r, s)) for s in new_seq[1:]},
        missing={v: phi2.missing_at(v) for v in [r] + new_seq},
        typical=TypicalForm(alpha, beta, tuple(two_chain), tuple(delta_chain)),
        context=_fan_context(g, r),
    )
    bad = check_typical(g, phi2, fan2)
    if bad:
        raise FanError(f"normalization failed: {bad}")
    return NormalizedFan(phi2, fan2, cmap)


def check_typical(
    g: SimpleGraph, phi: PartialEdgeColoring, fan: Multifan
) -> list[str]:
    """Violations of the normalized-form invariants; empty when typical."""
    out = []
    t = fan.typical
    if t is None:
        return ["no typical form attached"]
    r = fan.center
    s1 = fan.sequence[0]
    delta = degree_profile(g).delta
    if not phi.misses(r, 1):
        out.append("color 1 not missing at center")
    if phi.missing_at(s1) != (2, delta):
        out.append(f"missing(s1) = {phi.missing_at(s1)} != (2, {delta})")
    seq = fan.sequence
    if seq != (s1,) + t.two_inducing + t.delta_inducing:
        out.append("sequence does not match the chain split")
    for i in range(2, t.beta + 1):
        s = seq[i - 1]
        c = phi.color_of(g.edge_id(r, s))
        want_color = delta if i == t.alpha + 1 else i
        if c != want_color:
            out.append(f"spoke {i} carries color {c}, want {want_color}")
        want_missing = (i + 1,)
        if phi.missing_at(s) != want_missing:
            out.append(f"spoke {i} misses {phi.missing_at(s)}, want {want_missing}")
    return out


def inducing_map(
    g: SimpleGraph, phi: PartialEdgeColoring, fan: Multifan
) -> InducingMap:
    """Tag every missing color of the spokes with its root (2 or Delta) and
    the spoke subsequence that induces it. The two roots tag themselves."""
    t = fan.typical
    if t is None:
        raise FanError("inducing map needs a typical fan")
    if not phi.is_elementary(fan.vertex_set()):
        raise FanError("fan vertex set is not elementary")
    delta = degree_profile(g).delta
    entries: dict[int, tuple[str, tuple[int, ...]]] = {
        2: ("2", ()),
        delta: ("delta", ()),
    }
    for idx, s in enumerate(t.two_inducing):
        seq = t.two_inducing[: idx + 1]
        for c in phi.missing_at(s):
            entries[c] = ("2", seq)
    for idx, s in enumerate(t.delta_inducing):
        seq = t.delta_inducing[: idx + 1]
        for c in phi.missing_at(s):
            entries[c] = ("delta", seq)
    return InducingMap(entries)


# -- maximum multifan --------------------------------------------------------


@dataclass
class MaxFanResult:
    phi: PartialEdgeColoring
    fan: Multifan
    status: str  # "EXACT" | "LOWER-BOUND"
    explored: int

    @property
    def exact(self) -> bool:
        return self.status == "EXACT"


def search_maximum_multifan(
    g: SimpleGraph,
    r: int,
    s1: int,
    mode: str = "exhaustive",
    budget: int = 10_000,
    phi0: Optional[PartialEdgeColoring] = None,
    k: Optional[int] = None,
) -> MaxFanResult:
    """Largest |V(F)| over colorings of G - rs1.

    exhaustive: enumerate every coloring (EXACT unless the enumeration is
    capped by `budget` > 0 and overflows). reachability: BFS from phi0
    over single Kempe swaps touching the current fan's colors,
    deduplicated by content hash; always LOWER-BOUND.
    """
    e = g.edge_id(r, s1)
    if k is None:
        k = degree_profile(g).delta
    if mode == "exhaustive":
        best = None
        count = 0
        capped = False
        for phi in iter_colorings(g, e, k):
            count += 1
            if budget and count > budget:
                capped = True
                break
            fan = grow_multifan(g, phi, r, s1)
            if best is None or fan.size() > best[1].size():
                best = (phi, fan)
        if best is None:
            raise FanError("no colorings to search")
        status = "LOWER-BOUND" if capped else "EXACT"
        return MaxFanResult(best[0], best[1], status, count)
    if mode != "reachability":
        raise ValueError(f"unknown mode {mode!r}")
    if phi0 is None:
        en = enumerate_colorings(g, e, k, limit=1)
        if not en.colorings:
            raise FanError("no colorings to search")
        phi0 = en.colorings[0]
    best_fan = grow_multifan(g, phi0, r, s1)
    best_phi = phi0
    seen = {phi0.stable_hash()}
    frontier = [phi0]
    explored = 0
    while frontier and explored < budget:
        phi = frontier.pop(0)
        explored += 1
        fan = grow_multifan(g, phi, r, s1)
        if fan.size() > best_fan.size():
            best_fan, best_phi = fan, phi
        relevant = set()
        for v in fan.vertex_set():
            relevant.update(phi.missing_at(v))
        relevant.update(fan.edge_colors.values())
        pairs = sorted(
            (a, b)
            for a in range(1, k + 1)
            for b in range(a + 1, k + 1)
            if a in relevant or b in relevant
        )
        for a, b in pairs:
            for chain in phi.chains(a, b):
                nxt = kempe_swap(phi, chain)
                h = nxt.stable_hash()
                if h not in seen:
                    seen.add(h)
                    frontier.append(nxt)
    return MaxFanResult(best_phi, best_fan, "LOWER-BOUND", explored)


# -- stability ----------------------------------------------------------------


def stability_class(
    phi2: PartialEdgeColoring, phi: PartialEdgeColoring, fan: Multifan
) -> str:
    """Strongest stability label of phi2 relative to phi around the fan:
    "F-stable" (missing sets and spoke colors frozen), "V(F)-stable"
    (fan vertex set re-spans a multifan, s1 and r keep their missing sets,
    spoke missing colors preserved as a set), "V(F-r)-stable" (same
    without r's missing set), else "none".
    """
    if phi.graph != phi2.graph:
        raise FanError("colorings live on different graphs")
    if phi.uncolored != phi2.uncolored:
        raise FanError("colorings have different uncolored edges")
    g = phi.graph
    r = fan.center
    seq = fan.sequence
    s1 = seq[0]

    f_stable = all(
        phi2.missing_mask(v) == phi.missing_mask(v) for v in fan.vertex_set()
    ) and all(
        phi2.color_of(g.edge_id(r, s)) == phi.color_of(g.edge_id(r, s))
        for s in seq[1:]
    )
    if f_stable:
        return "F-stable"

    # does V(F) still span a multifan at r under phi2?
    member = {s1}
    missing_union = phi2.missing_mask(s1)
    grew = True
    while grew:
        grew = False
        for s in seq[1:]:
            if s in member:
                continue
            c = phi2.color_of(g.edge_id(r, s))
            if c is not None and (missing_union >> (c - 1)) & 1:
                member.add(s)
                missing_union |= phi2.missing_mask(s)
                grew = True
    spans = member == set(seq)
    s1_same = phi2.missing_mask(s1) == phi.missing_mask(s1)
    union_old = 0
    for s in seq:
        union_old |= phi.missing_mask(s)
    union_new = 0
    for s in seq:
        union_new |= phi2.missing_mask(s)
    if spans and s1_same and union_old == union_new:
        if phi2.missing_mask(r) == phi.missing_mask(r):
            return "V(F)-stable"
        return "V(F-r)-stable"
    return "none"


_STABILITY_RANK = {"F-stable": 3, "V(F)-stable": 2, "V(F-r)-stable": 1, "none": 0}


def at_least_stable(label: str, want: str) -> bool:
    return _STABILITY_RANK[label] >= _STABILITY_RANK[want]


# -- Kierstead paths -----------------------------------------------------------


def grow_kierstead_path(
    g: SimpleGraph,
    phi: PartialEdgeColoring,
    v0: int,
    v1: int,
    max_len: Optional[int] = None,
) -> KiersteadPath:
    """Greedy growth from the uncolored edge v0v1: extend with the
    lowest-colored edge at the tip whose color is missing at a vertex at
    least two steps back."""
    e = g.edge_id(v0, v1)
    if phi.uncolored != e:
        raise FanError(f"edge {v0}-{v1} is not the uncolored edge")
    verts = [v0, v1]
    while max_len is None or len(verts) < max_len:
        tip = verts[-1]
        missing_union = 0
        for u in verts[:-1]:
            missing_union |= phi.missing_mask(u)
        best = None
        for w in g.adjacency[tip]:
            if w in verts:
                continue
            c = phi.color_of(g.edge_id(tip, w))
            if c is None:
                continue
            if (missing_union >> (c - 1)) & 1:
                if best is None or (c, w) < best:
                    best = (c, w)
        if best is None:
            break
        verts.append(best[1])
    return KiersteadPath(tuple(verts), e)


def check_kierstead_path(
    g: SimpleGraph, phi: PartialEdgeColoring, kp: KiersteadPath
) -> list[str]:
    out = []
    verts = kp.vertices
    if len(set(verts)) != len(verts):
        out.append("vertices not distinct")
    if phi.uncolored != kp.uncolored_edge:
        out.append("uncolored edge mismatch")
    for i in range(2, len(verts)):
        c = phi.color_of(g.edge_id(verts[i - 1], verts[i]))
        if c is None:
            out.append(f"edge {verts[i-1]}-{verts[i]} uncolored")
            continue
        if not any(phi.misses(verts[j], c) for j in range(i - 1)):
            out.append(
                f"color {c} of edge {verts[i-1]}-{verts[i]} missing nowhere earlier"
            )
    return out


# -- verifiers -----------------------------------------------------------------


def _parents_and_roots(
    g: SimpleGraph, phi: PartialEdgeColoring, fan: Multifan
) -> dict[int, int]:
    """Root color in missing(s1) whose chain reaches each spoke; general
    fans (any |missing(s1)|). Requires elementary V(F)."""
    r = fan.center
    seq = fan.sequence
    s1 = seq[0]
    color_owner = {}
    for s in seq:
        for c in phi.missing_at(s):
            color_owner[c] = s
    out: dict[int, int] = {}

    def root_of(s: int) -> int:
        if s == s1:
            return -1
        if s in out:
            return out[s]
        c = phi.color_of(g.edge_id(r, s))
        owner = color_owner.get(c)
        if owner is None:
            raise FanError(f"spoke color {c} missing at no fan vertex")
        if owner == s1:
            out[s] = c
            return c
        rt = root_of(owner)
        out[s] = rt
        return rt

    for s in seq[1:]:
        root_of(s)
    return out


def verify_fan_elementary(
    g: SimpleGraph,
    phi: PartialEdgeColoring,
    fan: Multifan,
    critical: Optional[bool] = None,
    class_two: Optional[bool] = None,
) -> V.Verdict:
    """The fan's vertex set must be elementary whenever the uncolored edge
    is critical in a class-2 graph."""
    name = "fan-elementary"
    gate = _hypothesis_gate(name, g, fan.uncolored_edge, critical, class_two)
    if gate is not None:
        return gate
    bad = check_multifan(g, phi, fan)
    if bad:
        return V.failed(name, reason="not a multifan", violations=bad)
    vs = fan.vertex_set()
    if phi.is_elementary(vs):
        return V.passed(name, vertices=list(vs))
    clash = _first_clash(phi, vs)
    return V.failed(name, clash=clash, coloring=phi.to_line())


def _first_clash(phi: PartialEdgeColoring, vs: Sequence[int]):
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            inter = phi.missing_mask(u) & phi.missing_mask(v)
            if inter:
                return {
                    "u": u,
                    "v": v,
                    "color": (inter & -inter).bit_length(),
                }
    return None


def _hypothesis_gate(name, g, e, critical, class_two) -> Optional[V.Verdict]:
    if class_two is None or critical is None:
        from .solver import chromatic_index, is_critical_edge

        verdict = chromatic_index(g)
        if verdict.status != "ok":
            return V.unknown(name, "chromatic index undecided within budget")
        if class_two is None:
            class_two = verdict.cls == "two"
        if critical is None:
            critical = class_two and is_critical_edge(g, e)
    if not class_two:
        return V.inapplicable(name, "graph is class 1")
    if not critical:
        return V.inapplicable(name, "uncolored edge is not critical")
    return None


def verify_fan_linkage(
    g: SimpleGraph,
    phi: PartialEdgeColoring,
    fan: Multifan,
    critical: Optional[bool] = None,
    class_two: Optional[bool] = None,
) -> V.Verdict:
    """Three linkage facts on a multifan with a critical uncolored edge:
    (a) r and each spoke are linked in (gamma, delta) for gamma missing at
    r and delta missing at the spoke; (b) spokes whose missing colors hang
    off different roots are linked; (c) when same-root spokes are
    unlinked, r lies on the later spoke's chain."""
    name = "fan-linkage"
    gate = _hypothesis_gate(name, g, fan.uncolored_edge, critical, class_two)
    if gate is not None:
        return gate
    bad = check_multifan(g, phi, fan)
    if bad:
        return V.failed(name, reason="not a multifan", violations=bad)
    if not phi.is_elementary(fan.vertex_set()):
        return V.failed(name, reason="fan not elementary", clash=_first_clash(phi, fan.vertex_set()))
    r = fan.center
    seq = fan.sequence
    s1 = seq[0]
    checked = {"a": 0, "b": 0, "c": 0}
    for gamma in phi.missing_at(r):
        for s in seq:
            for delta in phi.missing_at(s):
                checked["a"] += 1
                if not are_linked(phi, r, s, gamma, delta):
                    return V.failed(
                        name, part="a", r=r, s=s, colors=[gamma, delta],
                        coloring=phi.to_line(),
                    )
    roots = _parents_and_roots(g, phi, fan)
    roots[s1] = -1
    for i, si in enumerate(seq):
        for sj in seq[i + 1:]:
            for dcol in phi.missing_at(si):
                ri = dcol if si == s1 else roots[si]
                for lcol in phi.missing_at(sj):
                    rj = lcol if sj == s1 else roots[sj]
                    if ri != rj:
                        checked["b"] += 1
                        if not are_linked(phi, si, sj, dcol, lcol):
                            return V.failed(
                                name, part="b", u=si, v=sj,
                                colors=[dcol, lcol], coloring=phi.to_line(),
                            )
                    else:
                        if not are_linked(phi, si, sj, dcol, lcol):
                            checked["c"] += 1
                            chain = phi.chain_at(sj, dcol, lcol)
                            if r not in chain.vertices:
                                return V.failed(
                                    name, part="c", u=si, v=sj,
                                    colors=[dcol, lcol], coloring=phi.to_line(),
                                )
    return V.passed(name, checked=checked)


def verify_kp_elementary(
    g: SimpleGraph,
    phi: PartialEdgeColoring,
    kp: KiersteadPath,
    critical: Optional[bool] = None,
    class_two: Optional[bool] = None,
) -> V.Verdict:
    """A four-vertex Kierstead path with min(d(v2), d(v3)) < Delta must be
    elementary (critical uncolored edge, class-2 graph)."""
    name = "kierstead-elementary"
    if len(kp.vertices) != 4:
        return V.inapplicable(name, f"path has {len(kp.vertices)} vertices, need 4")
    gate = _hypothesis_gate(name, g, kp.uncolored_edge, critical, class_two)
    if gate is not None:
        return gate
    bad = check_kierstead_path(g, phi, kp)
    if bad:
        return V.failed(name, reason="not a Kierstead path", violations=bad)
    delta = degree_profile(g).delta
    degs = [g.degree(v) for v in kp.vertices]
    # Guaranteed elementary when one of the two middle vertices (the
    # colored endpoint of the working edge and its successor) is below
    # maximum degree. The far end's degree alone does not suffice: graphs
    # exist with d(v1) = d(v2) = Delta, d(v3) < Delta, and a clash.
    if min(degs[1], degs[2]) >= delta:
        return V.inapplicable(
            name, "both middle vertices have maximum degree", degrees=degs
        )
    if phi.is_elementary(kp.vertices):
        return V.passed(name, vertices=list(kp.vertices), degrees=degs)
    return V.failed(
        name,
        clash=_first_clash(phi, kp.vertices),
        degrees=degs,
        coloring=phi.to_line(),
    )


def verify_stable_swaps(
    g: SimpleGraph,
    phi: PartialEdgeColoring,
    fan: Multifan,
    critical: Optional[bool] = None,
    class_two: Optional[bool] = None,
) -> V.Verdict:
    """Swaps guaranteed to freeze a typical fan: (1,gamma) at any outside
    vertex missing 1 or gamma; (gamma,Delta) when gamma hangs off root 2
    and the chain avoids r; (2,gamma) when gamma hangs off root Delta and
    the chain avoids r."""
    name = "stable-swaps"
    gate = _hypothesis_gate(name, g, fan.uncolored_edge, critical, class_two)
    if gate is not None:
        return gate
    if fan.typical is None:
        return V.inapplicable(name, "fan is not typical")
    delta = degree_profile(g).delta
    imap = inducing_map(g, phi, fan)
    vs = set(fan.vertex_set())
    fan_missing = sorted(set(c for v in fan.vertex_set() for c in phi.missing_at(v)))
    checked = 0
    for x in range(g.n):
        if x in vs:
            continue
        for gamma in fan_missing:
            cases = [(1, gamma, "1-gamma", True)]
            if gamma != 1 and imap.entries.get(gamma, ("", ()))[0] == "2":
                cases.append((gamma, delta, "gamma-Delta", False))
            if gamma != 1 and imap.entries.get(gamma, ("", ()))[0] == "delta":
                cases.append((2, gamma, "2-gamma", False))
            for a, b, label, always in cases:
                if a == b:
                    continue
                if not (phi.misses(x, a) or phi.misses(x, b)):
                    continue
                chain = phi.chain_at(x, a, b)
                if not always and fan.center in chain.vertices:
                    continue
                phi2 = kempe_swap(phi, chain)
                checked += 1
                got = stability_class(phi2, phi, fan)
                if got != "F-stable":
                    return V.failed(
                        name, x=x, swap=[a, b], case=label, got=got,
                        coloring=phi.to_line(),
                    )
    return V.passed(name, checked=checked)


def verify_vf_stable_swaps(
    g: SimpleGraph,
    phi: PartialEdgeColoring,
    fan: Multifan,
    critical: Optional[bool] = None,
    class_two: Optional[bool] = None,
) -> V.Verdict:
    """Without the r-avoidance proviso the same root-crossing swaps still
    keep the fan vertex set stable (possibly re-spanned in another order)."""
    name = "vf-stable-swaps"
    gate = _hypothesis_gate(name, g, fan.uncolored_edge, critical, class_two)
    if gate is not None:
        return gate
    if fan.typical is None:
        return V.inapplicable(name, "fan is not typical")
    delta = degree_profile(g).delta
    imap = inducing_map(g, phi, fan)
    vs = set(fan.vertex_set())
    fan_missing = sorted(set(c for v in fan.vertex_set() for c in phi.missing_at(v)))
    checked = 0
    for x in range(g.n):
        if x in vs:
            continue
        for gamma in fan_missing:
            root = imap.entries.get(gamma, ("", ()))[0]
            if gamma == 1:
                continue
            if root == "2":
                a, b = gamma, delta
            elif root == "delta":
                a, b = 2, gamma
            else:
                continue
            if a == b or not (phi.misses(x, a) or phi.misses(x, b)):
                continue
            phi2 = kempe_swap(phi, phi.chain_at(x, a, b))
            checked += 1
            got = stability_class(phi2, phi, fan)
            if not at_least_stable(got, "V(F)-stable"):
                return V.failed(
                    name, x=x, swap=[a, b], got=got, coloring=phi.to_line()
                )
    return V.passed(name, checked=checked)
