"""Partial edge colorings, missing sets, Kempe chains and swaps.

Colors are the integers 1..k. A coloring may leave at most one edge
uncolored (the working edge of the recoloring machinery). Missing sets are
maintained incrementally as bitmasks: bit (c-1) of missing[v] is set iff
color c is absent at v.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graphs import SimpleGraph


class ColoringError(ValueError):
    pass


class StaleChainError(ColoringError):
    """The coloring changed since the chain was extracted."""


class BothColorsPresentError(ColoringError):
    """Linkage asked about a vertex that misses neither chain color."""


def _mask_to_colors(mask: int) -> tuple[int, ...]:
    out = []
    c = 1
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return tuple(out)


@dataclass(frozen=True)
class Chain:
    """One component of the subgraph on two color classes.

    Edges alternate between the two colors; `kind` is "path" or "cycle".
    A vertex missing both colors forms a trivial one-vertex path.
    """

    colors: tuple[int, int]  # (min, max)
    kind: str
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def endpoints(self) -> tuple[int, int]:
        if self.kind != "path":
            raise ValueError("cycle chains have no endpoints")
        return self.vertices[0], self.vertices[-1]


class PartialEdgeColoring:
    """A proper k-edge-coloring of G minus at most one edge."""

    __slots__ = ("graph", "k", "assignment", "uncolored", "missing", "_by_color")

    def __init__(self, graph: SimpleGraph, k: int):
        if k < 0:
            raise ColoringError("k must be non-negative")
        self.graph = graph
        self.k = k
        self.assignment: list[Optional[int]] = [None] * len(graph.edges)
        self.uncolored: Optional[int] = None
        full = (1 << k) - 1
        self.missing = [full] * graph.n
        # edge carrying color c at v, 0-based storage: _by_color[v][c-1]
        self._by_color = [[-1] * k for _ in range(graph.n)]

    # -- construction ------------------------------------------------------

    @classmethod
    def from_assignment(
        cls,
        graph: SimpleGraph,
        k: int,
        colors: Sequence[Optional[int]],
        uncolored: Optional[int] = None,
    ) -> "PartialEdgeColoring":
        """Build and validate a coloring from a per-edge color sequence.

        Exactly the entries equal to None are uncolored; at most one is
        allowed and it must agree with `uncolored` when given.
        """
        if len(colors) != len(graph.edges):
            raise ColoringError("color list length != edge count")
        phi = cls(graph, k)
        blank = [i for i, c in enumerate(colors) if c is None]
        if len(blank) > 1:
            raise ColoringError("more than one uncolored edge")
        if uncolored is not None and blank and blank[0] != uncolored:
            raise ColoringError("uncolored edge mismatch")
        if uncolored is not None and not blank:
            raise ColoringError(f"edge {uncolored} is colored")
        phi.uncolored = blank[0] if blank else None
        for e, c in enumerate(colors):
            if c is None:
                continue
            phi._paint(e, c)
        return phi

    def copy(self) -> "PartialEdgeColoring":
        new = PartialEdgeColoring.__new__(PartialEdgeColoring)
        new.graph = self.graph
        new.k = self.k
        new.assignment = self.assignment.copy()
        new.uncolored = self.uncolored
        new.missing = self.missing.copy()
        new._by_color = [row.copy() for row in self._by_color]
        return new

    # -- low-level paint/erase (keep caches in sync) -----------------------

    def _paint(self, e: int, c: int):
        if not (1 <= c <= self.k):
            raise ColoringError(f"color {c} outside [1,{self.k}]")
        if self.assignment[e] is not None:
            raise ColoringError(f"edge {e} already colored")
        u, v = self.graph.edges[e]
        bit = 1 << (c - 1)
        if not (self.missing[u] & bit) or not (self.missing[v] & bit):
            raise ColoringError(f"color {c} clashes at edge {e}")
        self.assignment[e] = c
        self.missing[u] &= ~bit
        self.missing[v] &= ~bit
        self._by_color[u][c - 1] = e
        self._by_color[v][c - 1] = e

    def _erase(self, e: int):
        c = self.assignment[e]
        if c is None:
            raise ColoringError(f"edge {e} not colored")
        u, v = self.graph.edges[e]
        bit = 1 << (c - 1)
        self.assignment[e] = None
        self.missing[u] |= bit
        self.missing[v] |= bit
        self._by_color[u][c - 1] = -1
        self._by_color[v][c - 1] = -1

    # -- queries -----------------------------------------------------------

    def color_of(self, e: int) -> Optional[int]:
        return self.assignment[e]

    def is_complete(self) -> bool:
        return self.uncolored is None and all(
            c is not None for c in self.assignment
        )

    def missing_mask(self, v: int) -> int:
        return self.missing[v]

    def missing_at(self, v: int) -> tuple[int, ...]:
        """The set of colors absent at v (the uncolored edge contributes nothing)."""
        return _mask_to_colors(self.missing[v])

    def present_at(self, v: int) -> tuple[int, ...]:
        full = (1 << self.k) - 1
        return _mask_to_colors(full & ~self.missing[v])

    def misses(self, v: int, c: int) -> bool:
        return bool(self.missing[v] >> (c - 1) & 1)

    def edge_with_color(self, v: int, c: int) -> Optional[int]:
        e = self._by_color[v][c - 1]
        return None if e < 0 else e

    def is_elementary(self, vertices: Iterable[int]) -> bool:
        """True iff the missing sets of the given vertices are pairwise disjoint."""
        acc = 0
        for v in vertices:
            m = self.missing[v]
            if acc & m:
                return False
            acc |= m
        return True

    def validate(self) -> bool:
        return self.validate_detail() is None

    def validate_detail(self) -> Optional[str]:
        """Full recomputation cross-check; returns a message for the first violation."""
        g = self.graph
        blank = [e for e, c in enumerate(self.assignment) if c is None]
        if len(blank) > 1:
            return f"{len(blank)} uncolored edges"
        if (blank[0] if blank else None) != self.uncolored:
            return "uncolored cache mismatch"
        full = (1 << self.k) - 1
        for v in range(g.n):
            seen = 0
            for w in g.adjacency[v]:
                c = self.assignment[g.edge_id(v, w)]
                if c is None:
                    continue
                bit = 1 << (c - 1)
                if seen & bit:
                    return f"color {c} repeated at vertex {v}"
                seen |= bit
            if self.missing[v] != full & ~seen:
                return f"missing-set cache wrong at vertex {v}"
            for c in range(1, self.k + 1):
                e = self._by_color[v][c - 1]
                if e >= 0 and self.assignment[e] != c:
                    return f"by-color cache wrong at vertex {v}, color {c}"
        return None

    def stable_hash(self) -> int:
        """64-bit content hash, stable across processes (used for BFS dedup)."""
        data = bytes(
            0 if c is None else c for c in self.assignment
        )
        return int.from_bytes(
            hashlib.blake2b(data, digest_size=8).digest(), "big"
        )

    def signature(self) -> tuple:
        return (self.uncolored, tuple(self.assignment))

    # -- chains ------------------------------------------------------------

    def chain_at(self, v: int, a: int, b: int) -> Chain:
        """The unique maximal (a,b)-alternating component through v.

        Cycle chains are listed starting at v toward the lower-id neighbor;
        path chains are listed from their lower-id endpoint.
        """
        if a == b:
            raise ColoringError("chain colors must differ")
        for c in (a, b):
            if not (1 <= c <= self.k):
                raise ColoringError(f"color {c} outside [1,{self.k}]")
        ea = self.edge_with_color(v, a)
        eb = self.edge_with_color(v, b)
        lo, hi = min(a, b), max(a, b)
        if ea is None and eb is None:
            return Chain((lo, hi), "path", (v,), ())

        def walk(start_edge: int, at: int):
            verts = [at]
            eids = []
            cur_e = start_edge
            cur_v = at
            while cur_e is not None:
                eids.append(cur_e)
                cur_v = self.graph.other_end(cur_e, cur_v)
                verts.append(cur_v)
                if cur_v == at and len(eids) > 1:
                    break
                nxt_color = b if self.assignment[cur_e] == a else a
                cur_e = self.edge_with_color(cur_v, nxt_color)
                if cur_e in eids:
                    cur_e = None
            return verts, eids

        if ea is not None and eb is not None:
            # v interior: try one direction; may close a cycle
            first = min(
                (ea, self.graph.other_end(ea, v)),
                (eb, self.graph.other_end(eb, v)),
                key=lambda t: t[1],
            )[0]
            verts, eids = walk(first, v)
            if verts[-1] == verts[0]:
                return Chain((lo, hi), "cycle", tuple(verts[:-1]), tuple(eids))
            other = eb if first == ea else ea
            back_verts, back_eids = walk(other, v)
            # stitch: back part reversed, then forward part
            allv = back_verts[::-1] + verts[1:]
            alle = back_eids[::-1] + eids
            if allv[0] > allv[-1]:
                allv.reverse()
                alle.reverse()
            return Chain((lo, hi), "path", tuple(allv), tuple(alle))

        start = ea if ea is not None else eb
        verts, eids = walk(start, v)
        if verts[0] > verts[-1]:
            verts.reverse()
            eids.reverse()
        return Chain((lo, hi), "path", tuple(verts), tuple(eids))

    def chains(self, a: int, b: int) -> list[Chain]:
        """All (a,b)-chains that contain at least one edge, deterministic order."""
        seen: set[int] = set()
        out = []
        for v in range(self.graph.n):
            if v in seen:
                continue
            ch = self.chain_at(v, a, b)
            if not ch.edges:
                continue
            seen.update(ch.vertices)
            out.append(ch)
        return out

    def check_chain_current(self, chain: Chain) -> bool:
        a, b = chain.colors
        want = {a, b}
        for e in chain.edges:
            if self.assignment[e] not in want:
                return False
        # alternation along the listed order
        prev = None
        for e in chain.edges:
            c = self.assignment[e]
            if prev is not None and c == prev:
                return False
            prev = c
        return True

    # -- serialization -----------------------------------------------------

    def to_line(self) -> str:
        """`k; e0=c0,e1=c1,...,eu=_` with `_` marking the uncolored edge."""
        parts = [
            f"{e}={'_' if c is None else c}"
            for e, c in enumerate(self.assignment)
        ]
        return f"{self.k}; " + ",".join(parts)

    @classmethod
    def from_line(cls, graph: SimpleGraph, line: str) -> "PartialEdgeColoring":
        head, _, rest = line.partition(";")
        k = int(head.strip())
        colors: list[Optional[int]] = [None] * len(graph.edges)
        filled = [False] * len(graph.edges)
        rest = rest.strip()
        if rest:
            for part in rest.split(","):
                es, _, cs = part.partition("=")
                e = int(es)
                if filled[e]:
                    raise ColoringError(f"edge {e} listed twice")
                filled[e] = True
                colors[e] = None if cs.strip() == "_" else int(cs)
        if not all(filled):
            raise ColoringError("serialized coloring misses edges")
        return cls.from_assignment(graph, k, colors)

    def __repr__(self):
        return f"PartialEdgeColoring({self.to_line()!r})"


# -- the operations of the module's public surface -------------------------


def validate(phi: PartialEdgeColoring) -> bool:
    return phi.validate()


def missing(phi: PartialEdgeColoring, v: int) -> tuple[int, ...]:
    return phi.missing_at(v)


def present(phi: PartialEdgeColoring, v: int) -> tuple[int, ...]:
    return phi.present_at(v)


def is_elementary(phi: PartialEdgeColoring, vertices: Iterable[int]) -> bool:
    return phi.is_elementary(vertices)


def chain_at(phi: PartialEdgeColoring, v: int, a: int, b: int) -> Chain:
    return phi.chain_at(v, a, b)


def kempe_swap(phi: PartialEdgeColoring, chain: Chain) -> PartialEdgeColoring:
    """Interchange the chain's two colors on its edges; returns a new coloring."""
    if not phi.check_chain_current(chain):
        raise StaleChainError("chain does not match the current coloring")
    a, b = chain.colors
    new = phi.copy()
    swap_chain_inplace(new, chain.edges, a, b)
    return new


def swap_chain_inplace(phi: PartialEdgeColoring, edge_ids: Sequence[int], a: int, b: int):
    olds = [phi.assignment[e] for e in edge_ids]
    for e in edge_ids:
        phi._erase(e)
    for e, c in zip(edge_ids, olds):
        phi._paint(e, b if c == a else a)


def kempe_swap_at(phi: PartialEdgeColoring, v: int, a: int, b: int) -> PartialEdgeColoring:
    """Swap on the (a,b)-chain through v (identity when a == b)."""
    if a == b:
        return phi.copy()
    return kempe_swap(phi, phi.chain_at(v, a, b))


def are_linked(phi: PartialEdgeColoring, u: int, v: int, a: int, b: int) -> bool:
    """True iff u and v are the two endpoints of one common (a,b)-path chain."""
    for x in (u, v):
        if not (phi.missing[x] & ((1 << (a - 1)) | (1 << (b - 1)))):
            raise BothColorsPresentError(
                f"vertex {x} has both colors {a},{b} present"
            )
    if u == v:
        return True
    ch = phi.chain_at(u, a, b)
    if ch.kind != "path":
        return False
    p, q = ch.endpoints()
    return {p, q} == {u, v}


def double_swap_at(
    phi: PartialEdgeColoring, x: int, a: int, b: int, c: int
) -> PartialEdgeColoring:
    """Swap on the (a,b)-chain at x, then on the (b,c)-chain at x.

    The degenerate a == b case is the identity (a vacuous recoloring).
    """
    if a == b:
        return phi.copy()
    if not phi.misses(x, a):
        raise ColoringError(f"color {a} not missing at {x}")
    for col in (b, c):
        if phi.misses(x, col):
            raise ColoringError(f"color {col} not present at {x}")
    step1 = kempe_swap_at(phi, x, a, b)
    return kempe_swap_at(step1, x, b, c)
