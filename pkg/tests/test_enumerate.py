import random

import pytest
from hypothesis import given, settings, strategies as st

from fanforge.enumerate_graphs import (
    CONNECTED_COUNTS,
    augment_level,
    canonical_cert,
    canonical_form,
    connected_graph6_upto,
    connected_graphs,
)
from fanforge.graphs import from_adj_masks, from_graph6


def masks_from_edges(n, edges):
    m = [0] * n
    for u, v in edges:
        m[u] |= 1 << v
        m[v] |= 1 << u
    return tuple(m)


def permuted(masks, perm):
    n = len(masks)
    out = [0] * n
    for v in range(n):
        for w in range(n):
            if (masks[v] >> w) & 1:
                out[perm[v]] |= 1 << perm[w]
    return tuple(out)


@pytest.mark.parametrize("n", range(1, 8))
def test_connected_counts_match_published_sequence(n):
    assert len(connected_graphs(n)) == CONNECTED_COUNTS[n]


@pytest.mark.slow
def test_connected_count_n8():
    assert len(connected_graphs(8)) == CONNECTED_COUNTS[8]


def test_atlas_cross_check():
    nx = pytest.importorskip("networkx")
    from networkx.generators.atlas import graph_atlas_g

    atlas = [
        G
        for G in graph_atlas_g()
        if G.number_of_nodes() >= 1 and nx.is_connected(G)
    ]
    assert len(atlas) == 996
    atlas_certs = {}
    for G in atlas:
        n = G.number_of_nodes()
        key = (n, canonical_cert(masks_from_edges(n, list(G.edges))))
        atlas_certs[key] = atlas_certs.get(key, 0) + 1
    assert all(v == 1 for v in atlas_certs.values())
    mine = set()
    for n in range(1, 8):
        for g in connected_graphs(n):
            mine.add((n, canonical_cert(g)))
    assert mine == set(atlas_certs)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_certificate_invariant_under_relabeling(data):
    n = data.draw(st.integers(min_value=1, max_value=8))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = data.draw(st.integers(min_value=0, max_value=(1 << len(pairs)) - 1))
    edges = [p for i, p in enumerate(pairs) if (mask >> i) & 1]
    masks = masks_from_edges(n, edges)
    perm = data.draw(st.permutations(range(n)))
    assert canonical_cert(masks) == canonical_cert(permuted(masks, list(perm)))


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_certificate_equality_is_isomorphism(data):
    nx = pytest.importorskip("networkx")
    n = data.draw(st.integers(min_value=2, max_value=7))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m1 = data.draw(st.integers(min_value=0, max_value=(1 << len(pairs)) - 1))
    m2 = data.draw(st.integers(min_value=0, max_value=(1 << len(pairs)) - 1))
    e1 = [p for i, p in enumerate(pairs) if (m1 >> i) & 1]
    e2 = [p for i, p in enumerate(pairs) if (m2 >> i) & 1]
    c1 = canonical_cert(masks_from_edges(n, e1))
    c2 = canonical_cert(masks_from_edges(n, e2))
    g1 = nx.Graph(e1)
    g2 = nx.Graph(e2)
    g1.add_nodes_from(range(n))
    g2.add_nodes_from(range(n))
    assert (c1 == c2) == nx.is_isomorphic(g1, g2)


def test_canonical_form_is_isomorphic_relabeling():
    g = connected_graphs(6)[50]
    cf = canonical_form(g)
    assert canonical_cert(cf) == canonical_cert(g)
    assert sorted(m.bit_count() for m in cf) == sorted(m.bit_count() for m in g)


def test_star_and_complete_certificates_fast():
    # twin classes keep the individualization tree linear
    n = 9
    star = masks_from_edges(n, [(0, i) for i in range(1, n)])
    comp = masks_from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    assert canonical_cert(star) != canonical_cert(comp)
    assert canonical_cert(comp) == (1 << (n * (n - 1) // 2)) - 1


def test_augment_level_keep_filter():
    # filtering for minimum degree >= 2 at n=4: only C4, diamond, K4 and
    # the triangle-with-... enumerate and compare against a direct count
    parents = connected_graphs(3)
    kept = augment_level(
        parents, keep=lambda m: min(x.bit_count() for x in m) >= 2
    )
    full = augment_level(parents)
    direct = [
        g for g in full if min(x.bit_count() for x in g) >= 2
    ]
    assert {canonical_cert(g) for g in kept} == {
        canonical_cert(g) for g in direct
    }


def test_fixture_file_regenerates_identically(fixture_lines):
    assert connected_graph6_upto(7) == fixture_lines
    # every line decodes to a connected graph
    for line in fixture_lines[::29]:
        assert from_graph6(line).is_connected()
