"""Isomorph-free exhaustive generation of small connected graphs.

Graphs are handled as tuples of adjacency bitmasks. Each isomorphism class
gets an exact integer certificate: the lexicographically smallest packed
upper triangle over the leaves of an individualization/refinement tree.
Connected graphs on n vertices are produced by augmenting the connected
graphs on n-1 vertices with one new vertex joined to every nonempty subset
(every connected graph has a non-cut vertex, so each class is reached) and
deduplicating by certificate.

Used to build the graph6 fixture corpora where no external generator is
available; counts are cross-checked against the published sequence
1, 1, 2, 6, 21, 112, 853, 11117, 261080 in the tests.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional, Sequence

CONNECTED_COUNTS = {
    1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117, 9: 261080,
}

Masks = tuple[int, ...]


def _refine(n: int, adj: Sequence[int], colors: list[int]) -> tuple[list[int], int]:
    """Equitable refinement; returns (colors, class count). Invariant under
    relabeling because classes are ranked by sorted signatures."""
    ncls = len(set(colors))
    while True:
        buckets: dict[int, int] = {}
        for v in range(n):
            c = colors[v]
            buckets[c] = buckets.get(c, 0) | (1 << v)
        cms = [buckets[c] for c in sorted(buckets)]
        sigs = [
            (colors[v],) + tuple((adj[v] & cm).bit_count() for cm in cms)
            for v in range(n)
        ]
        uniq = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(uniq)}
        colors = [rank[s] for s in sigs]
        if len(uniq) == ncls:
            return colors, ncls
        ncls = len(uniq)


def _leaf_cert(n: int, adj: Sequence[int], colors: Sequence[int]) -> int:
    pos = [0] * n
    for v, c in enumerate(colors):
        pos[c] = v
    cert = 0
    for i in range(n):
        ai = adj[pos[i]]
        for j in range(i + 1, n):
            cert = (cert << 1) | ((ai >> pos[j]) & 1)
    return cert


def _interchangeable(n: int, adj: Sequence[int], members: list[int], cm: int) -> bool:
    """True when every transposition inside the class is an automorphism:
    identical adjacency outside the class, and the class induces either an
    independent set or a clique."""
    ext0 = adj[members[0]] & ~cm
    internal_empty = True
    internal_full = True
    for v in members:
        if adj[v] & ~cm != ext0:
            return False
        iv = adj[v] & cm
        if iv != 0:
            internal_empty = False
        if iv != cm & ~(1 << v):
            internal_full = False
    return internal_empty or internal_full


def canonical_cert(adj: Sequence[int]) -> int:
    """Exact isomorphism certificate for a graph given as adjacency masks.

    Equal certificates (for equal n) hold exactly for isomorphic graphs:
    the certificate is the packed adjacency of a canonical relabeling.
    """
    n = len(adj)
    if n <= 1:
        return 0
    best: Optional[int] = None

    def rec(colors: list[int], ncls: int):
        nonlocal best
        if ncls == n:
            cert = _leaf_cert(n, adj, colors)
            if best is None or cert < best:
                best = cert
            return
        # first class (lowest color) with more than one member
        target = None
        for c in range(ncls):
            members = [v for v in range(n) if colors[v] == c]
            if len(members) > 1:
                target = (c, members)
                break
        assert target is not None
        c, members = target
        cm = 0
        for v in members:
            cm |= 1 << v
        cand = members[:1] if _interchangeable(n, adj, members, cm) else members
        for v in cand:
            nxt = colors.copy()
            nxt[v] = -1
            nxt, k2 = _refine(n, adj, nxt)
            rec(nxt, k2)

    colors, ncls = _refine(n, adj, [0] * n)
    rec(colors, ncls)
    assert best is not None
    return best


def canonical_form(adj: Sequence[int]) -> Masks:
    """Adjacency masks of the canonically relabeled graph."""
    n = len(adj)
    cert = canonical_cert(adj)
    out = [0] * n
    bit = n * (n - 1) // 2
    for i in range(n):
        for j in range(i + 1, n):
            bit -= 1
            if (cert >> bit) & 1:
                out[i] |= 1 << j
                out[j] |= 1 << i
    return tuple(out)


def _augment(parent: Masks, subset: int) -> Masks:
    n = len(parent)
    child = [
        m | (1 << n) if (subset >> i) & 1 else m
        for i, m in enumerate(parent)
    ]
    child.append(subset)
    return tuple(child)


def augment_level(
    parents: Iterable[Masks],
    keep: Optional[Callable[[Masks], bool]] = None,
) -> list[Masks]:
    """All connected (n+1)-vertex graphs from connected n-vertex parents,
    one representative per isomorphism class, deterministic order.

    `keep` is an optional pre-certificate filter; when given, only children
    satisfying it are certified and returned (used to restrict expensive
    scans to candidates that can matter).
    """
    seen: dict[int, Masks] = {}
    for parent in parents:
        np1 = len(parent)
        for subset in range(1, 1 << np1):
            child = _augment(parent, subset)
            if keep is not None and not keep(child):
                continue
            cert = canonical_cert(child)
            if cert not in seen:
                seen[cert] = child
    return [seen[c] for c in sorted(seen)]


def connected_graphs(n: int) -> list[Masks]:
    """All connected graphs on exactly n vertices, one per isomorphism class."""
    if n < 1:
        raise ValueError("n >= 1")
    level: list[Masks] = [(0,)]
    for _ in range(1, n):
        level = augment_level(level)
    return level


def masks_to_graph6(masks: Masks) -> str:
    from .graphs import from_adj_masks, to_graph6

    return to_graph6(from_adj_masks(list(masks)))


def connected_graph6_upto(max_n: int) -> list[str]:
    """graph6 lines for all connected graphs with 1 <= n <= max_n,
    sorted by (n, graph6 string of the canonical form)."""
    out = []
    level: list[Masks] = [(0,)]
    out.extend(
        masks_to_graph6(canonical_form(g)) for g in level
    )
    for n in range(2, max_n + 1):
        level = augment_level(level)
        lines = sorted(masks_to_graph6(canonical_form(g)) for g in level)
        out.extend(lines)
    return out


def delta_critical_candidate(adj: Sequence[int]) -> bool:
    """Necessary conditions for an edge-critical class-2 graph, cheap
    enough to run inside the augmentation loop: every edge obeys the
    adjacency bound (each endpoint has at least Delta - d(other) + 1
    max-degree neighbors besides the other), and the core contains a
    cycle. Both are theorems, so no critical graph is ever excluded; the
    exact solver still decides criticality for the survivors."""
    n = len(adj)
    deg = [m.bit_count() for m in adj]
    delta = max(deg) if deg else 0
    if delta < 2:
        return False
    dv = 0
    for v in range(n):
        if deg[v] == delta:
            dv |= 1 << v
    for u in range(n):
        au = adj[u]
        du = deg[u]
        rest = au
        while rest:
            low = rest & -rest
            w = low.bit_length() - 1
            rest ^= low
            if u < w:
                if (au & dv & ~low).bit_count() < delta - deg[w] + 1:
                    return False
                if (adj[w] & dv & ~(1 << u)).bit_count() < delta - du + 1:
                    return False
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(n):
        if not (dv >> u) & 1:
            continue
        rest = adj[u] & dv
        while rest:
            low = rest & -rest
            w = low.bit_length() - 1
            rest ^= low
            if u < w:
                ru, rw = find(u), find(w)
                if ru == rw:
                    return True
                parent[ru] = rw
    return False
