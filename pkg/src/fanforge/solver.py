"""Exact chromatic index, criticality, overfullness, and coloring enumeration.

The class decision tries k = Delta with exhaustive backtracking; on failure
k = Delta + 1 always succeeds. Overfull graphs skip the k = Delta attempt:
a color class is a matching of at most floor(n/2) edges, so |E| >
Delta*floor(n/2) rules out Delta colors without any search. Everything is
integer arithmetic; no verdict is ever probabilistic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Optional

from .colorings import PartialEdgeColoring
from .graphs import SimpleGraph, degree_profile

DEFAULT_NODE_BUDGET = 10**8


class BudgetExceeded(Exception):
    pass


class EmptyGraphError(ValueError):
    pass


def node_budget_default() -> int:
    env = os.environ.get("FANFORGE_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_NODE_BUDGET


@dataclass
class ClassVerdict:
    """chi', the class-1/2 verdict, and a validating witness coloring.

    status is "ok" for an exact answer; "unknown" means the node budget
    ran out before the k = Delta search was decided (never a wrong answer).
    """

    chi_prime: Optional[int]
    cls: Optional[str]  # "one" | "two"
    witness: Optional[PartialEdgeColoring]
    nodes: int
    status: str = "ok"


def _edge_order(g: SimpleGraph) -> list[int]:
    # most-constrained-first: descending d(u)+d(v), ties by edge id
    degs = g.degrees()
    return sorted(
        range(len(g.edges)),
        key=lambda e: (-(degs[g.edges[e][0]] + degs[g.edges[e][1]]), e),
    )


def _search(
    g: SimpleGraph,
    k: int,
    budget: int,
    symmetry_break: bool = True,
) -> tuple[Optional[list[int]], int]:
    """Backtracking search for a proper k-edge-coloring.

    Returns (assignment 1-based per edge or None, nodes used). Raises
    BudgetExceeded when the node budget runs out undecided. With
    symmetry_break, a fresh color may only be introduced in first-use
    order along the fixed edge sequence; sound for both directions of the
    decision since color classes are interchangeable.
    """
    m = len(g.edges)
    order = _edge_order(g)
    full = (1 << k) - 1
    missing = [full] * g.n
    colors = [0] * m
    nodes = 0

    def rec(pos: int, used: int) -> bool:
        nonlocal nodes
        if pos == m:
            return True
        e = order[pos]
        u, v = g.edges[e]
        avail = missing[u] & missing[v]
        if symmetry_break:
            cap = (used << 1) | 1  # colors 1..(highest used + 1)
            avail &= cap
        while avail:
            low = avail & -avail
            avail ^= low
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded
            missing[u] ^= low
            missing[v] ^= low
            colors[e] = low.bit_length()
            if rec(pos + 1, used | low):
                return True
            missing[u] ^= low
            missing[v] ^= low
        return False

    ok = rec(0, 0)
    return (colors if ok else None), nodes


_CHI_CACHE: dict = {}
_CHI_CACHE_MAX = 200_000


def chromatic_index(
    g: SimpleGraph, budget: Optional[int] = None
) -> ClassVerdict:
    """Exact chi'(G) with a validating witness coloring.

    Requires at least one edge. Within the Vizing/Gupta window the answer
    is Delta or Delta+1; the k = Delta attempt is exhaustive. Results are
    memoized per (graph, budget); treat witnesses as read-only values.
    """
    if len(g.edges) == 0:
        raise EmptyGraphError("chromatic index query needs at least one edge")
    if budget is None:
        budget = node_budget_default()
    key = (g.n, g.edges, budget)
    hit = _CHI_CACHE.get(key)
    if hit is not None:
        return hit
    verdict = _chromatic_index_uncached(g, budget)
    if len(_CHI_CACHE) >= _CHI_CACHE_MAX:
        _CHI_CACHE.clear()
    _CHI_CACHE[key] = verdict
    return verdict


def _chromatic_index_uncached(g: SimpleGraph, budget: int) -> ClassVerdict:
    prof = degree_profile(g)
    delta = prof.delta
    nodes_total = 0

    if not is_overfull(g):  # g has an edge, so n >= 2
        try:
            sol, nodes = _search(g, delta, budget)
        except BudgetExceeded:
            return ClassVerdict(None, None, None, budget, status="unknown")
        nodes_total += nodes
        if sol is not None:
            phi = PartialEdgeColoring.from_assignment(g, delta, sol)
            return ClassVerdict(delta, "one", phi, nodes_total)

    try:
        sol, nodes = _search(g, delta + 1, budget - nodes_total)
    except BudgetExceeded:
        return ClassVerdict(None, None, None, budget, status="unknown")
    nodes_total += nodes
    assert sol is not None, "k = Delta+1 search cannot fail"
    phi = PartialEdgeColoring.from_assignment(g, delta + 1, sol)
    return ClassVerdict(delta + 1, "two", phi, nodes_total)


def is_class_two(g: SimpleGraph, budget: Optional[int] = None) -> Optional[bool]:
    v = chromatic_index(g, budget)
    if v.status != "ok":
        return None
    return v.cls == "two"


def is_critical_edge(g: SimpleGraph, e: int, budget: Optional[int] = None) -> bool:
    """chi'(G - e) < chi'(G); meaningful for class-2 graphs (checked)."""
    from .graphs import delete_edge

    base = chromatic_index(g, budget)
    if base.status != "ok":
        raise BudgetExceeded("base chromatic index undecided")
    if base.cls != "two":
        raise ValueError("criticality asked on a class-1 graph")
    rest = delete_edge(g, e)
    if len(rest.edges) == 0:
        return base.chi_prime > 0
    after = chromatic_index(rest, budget)
    if after.status != "ok":
        raise BudgetExceeded("deletion chromatic index undecided")
    return after.chi_prime < base.chi_prime


def is_delta_critical(g: SimpleGraph, budget: Optional[int] = None) -> bool:
    """Every proper subgraph has a smaller chromatic index (class two).

    Equivalent to: class two, every edge critical, and no isolated vertex
    (removing an isolated vertex is a proper subgraph with equal chi', so
    a disconnected graph with isolated vertices is never critical).
    """
    from .graphs import delete_edge

    base = chromatic_index(g, budget)
    if base.status != "ok":
        raise BudgetExceeded("base chromatic index undecided")
    if base.cls != "two":
        return False
    if any(len(a) == 0 for a in g.adjacency):
        return False
    for e in range(len(g.edges)):
        rest = delete_edge(g, e)
        if len(rest.edges) == 0:
            continue
        after = chromatic_index(rest, budget)
        if after.status != "ok":
            raise BudgetExceeded("deletion chromatic index undecided")
        if after.chi_prime >= base.chi_prime:
            return False
    return True


def critical_edges(g: SimpleGraph, budget: Optional[int] = None) -> list[int]:
    """Edge ids whose deletion lowers chi'. Empty for class-1 input."""
    from .graphs import delete_edge

    base = chromatic_index(g, budget)
    if base.status != "ok":
        raise BudgetExceeded("base chromatic index undecided")
    if base.cls != "two":
        return []
    out = []
    for e in range(len(g.edges)):
        rest = delete_edge(g, e)
        if len(rest.edges) == 0:
            if base.chi_prime > 0:
                out.append(e)
            continue
        after = chromatic_index(rest, budget)
        if after.status != "ok":
            raise BudgetExceeded("deletion chromatic index undecided")
        if after.chi_prime < base.chi_prime:
            out.append(e)
    return out


# -- overfull arithmetic (exact integers, no floats) ------------------------


def is_overfull(g: SimpleGraph) -> bool:
    if g.n < 2:
        raise ValueError("overfullness needs n >= 2")
    delta = degree_profile(g).delta
    return len(g.edges) > delta * (g.n // 2)


def is_just_overfull(g: SimpleGraph) -> bool:
    if g.n < 2:
        raise ValueError("overfullness needs n >= 2")
    delta = degree_profile(g).delta
    return len(g.edges) == delta * (g.n // 2) + 1


def overfull_deficiency(g: SimpleGraph) -> int:
    """(n-1)*Delta + 2 - 2|E| for odd n; <= 0 exactly when overfull."""
    if g.n % 2 == 0:
        raise ValueError("deficiency defined for odd order only")
    delta = degree_profile(g).delta
    return (g.n - 1) * delta + 2 - 2 * len(g.edges)


# -- parity ------------------------------------------------------------------


@dataclass
class ParityReport:
    n: int
    counts: dict[int, int]  # color -> number of vertices missing it
    violations: list[int]  # colors with count % 2 != n % 2

    @property
    def ok(self) -> bool:
        return not self.violations


def parity_check(g: SimpleGraph, phi: PartialEdgeColoring) -> ParityReport:
    """Per color, the number of vertices missing it must have n's parity.

    Requires a complete proper coloring (each color class is a matching,
    so the count is n - 2|E_alpha|).
    """
    if phi.graph is not g:
        if phi.graph != g:
            raise ValueError("coloring belongs to a different graph")
    if not phi.is_complete():
        raise ValueError("parity check needs a complete coloring")
    counts = {}
    bad = []
    for c in range(1, phi.k + 1):
        cnt = sum(1 for v in range(g.n) if phi.misses(v, c))
        counts[c] = cnt
        if cnt % 2 != g.n % 2:
            bad.append(c)
    return ParityReport(g.n, counts, bad)


# -- exhaustive enumeration --------------------------------------------------


@dataclass
class ColoringEnumeration:
    colorings: list[PartialEdgeColoring]
    truncated: bool

    def __iter__(self) -> Iterator[PartialEdgeColoring]:
        return iter(self.colorings)

    def __len__(self) -> int:
        return len(self.colorings)


def iter_colorings(
    g: SimpleGraph, e: Optional[int], k: int
) -> Iterator[PartialEdgeColoring]:
    """All proper k-edge-colorings of G - e, lexicographic in (edge id, color).

    Distinct colorings are distinct maps (no color-symmetry reduction).
    """
    m = len(g.edges)
    live = [i for i in range(m) if i != e]
    full = (1 << k) - 1
    missing = [full] * g.n
    chosen = {}

    def rec(pos: int) -> Iterator[PartialEdgeColoring]:
        if pos == len(live):
            colors: list[Optional[int]] = [None] * m
            for ee, c in chosen.items():
                colors[ee] = c
            yield PartialEdgeColoring.from_assignment(
                g, k, colors, uncolored=e
            )
            return
        eid = live[pos]
        u, v = g.edges[eid]
        avail = missing[u] & missing[v]
        while avail:
            low = avail & -avail
            avail ^= low
            missing[u] ^= low
            missing[v] ^= low
            chosen[eid] = low.bit_length()
            yield from rec(pos + 1)
            del chosen[eid]
            missing[u] ^= low
            missing[v] ^= low

    return rec(0)


def enumerate_colorings(
    g: SimpleGraph,
    e: Optional[int],
    k: int,
    limit: Optional[int] = None,
) -> ColoringEnumeration:
    """Materialize iter_colorings up to `limit`; truncation is flagged."""
    delta_rest = 0
    if g.n:
        degs = list(g.degrees())
        if e is not None:
            u, v = g.edges[e]
            degs[u] -= 1
            degs[v] -= 1
        delta_rest = max(degs) if degs else 0
    if k < delta_rest:
        raise ValueError(f"k={k} below the working maximum degree {delta_rest}")
    out = []
    truncated = False
    for phi in iter_colorings(g, e, k):
        if limit is not None and len(out) >= limit:
            truncated = True
            break
        out.append(phi)
    return ColoringEnumeration(out, truncated)


def count_colorings(g: SimpleGraph, e: Optional[int], k: int) -> int:
    return sum(1 for _ in iter_colorings(g, e, k))
