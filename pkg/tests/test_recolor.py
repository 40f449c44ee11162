import pytest

from conftest import leaf_padded_gadget
from fanforge.colorings import PartialEdgeColoring
from fanforge.fans import grow_multifan, normalize_typical, stability_class
from fanforge.graphs import (
    complete,
    cycle,
    degree_profile,
    delete_edge,
    light_vertices,
)
from fanforge.recolor import (
    MaximalityViolation,
    RelabelStep,
    ShiftIneligible,
    ShiftStep,
    SwapStep,
    TauError,
    Transcript,
    WITNESS_ITEMS,
    all_tau_sequences,
    apply_shifting,
    build_tau_sequence,
    fan_missing_union,
    is_avoiding,
    relabel,
    shift,
    shifting_kind,
    tau_sequence_by_definition,
    unlink_via_shifting,
    verify_rs1_linkage,
    witness_avoid_set,
    witness_tau_item,
)
from fanforge.solver import enumerate_colorings


def normalized(g, phi, r=0, s1=1):
    fan = grow_multifan(g, phi, r, s1)
    nf = normalize_typical(g, phi, fan)
    return nf.phi, nf.fan


@pytest.fixture
def type_b1():
    """Type B ending on missing color 1 (shiftable)."""
    g, phi = leaf_padded_gadget(4, [(3, 1)])
    phi, fan = normalized(g, phi)
    return g, phi, fan


@pytest.fixture
def type_b2():
    """Type B ending on missing color 2 (a fan color, not shiftable)."""
    g, phi = leaf_padded_gadget(4, [(3, 2)])
    phi, fan = normalized(g, phi)
    return g, phi, fan


@pytest.fixture
def type_ac():
    """Delta=6 gadget whose tau=3 walk repeats (type C) while tau=4 and
    tau=5 are rotations."""
    g, phi = leaf_padded_gadget(6, [(3, 4), (4, 5), (5, 4)])
    phi, fan = normalized(g, phi)
    return g, phi, fan


def test_type_b_terminal_one(type_b1):
    g, phi, fan = type_b1
    ts = build_tau_sequence(g, phi, fan, 3)
    assert ts.type == "B" and ts.terminal_color == 1
    assert ts.vertices == (2,)
    assert shifting_kind(ts, phi) == "B"


def test_type_b_terminal_two(type_b2):
    g, phi, fan = type_b2
    ts = build_tau_sequence(g, phi, fan, 3)
    assert ts.type == "B" and ts.terminal_color == 2
    assert shifting_kind(ts, phi) is None
    with pytest.raises(ShiftIneligible):
        apply_shifting(phi, fan, ts)


def test_type_c_and_rotations(type_ac):
    g, phi, fan = type_ac
    ts3 = build_tau_sequence(g, phi, fan, 3)
    assert ts3.type == "C" and ts3.repeat_index == 2
    assert len(ts3.vertices) == 3
    ts4 = build_tau_sequence(g, phi, fan, 4)
    ts5 = build_tau_sequence(g, phi, fan, 5)
    assert ts4.type == "A" and ts5.type == "A"
    assert len(ts4.vertices) == 2
    # rotations never have length one: the first edge carries tau itself
    assert all(
        len(t.vertices) >= 2 for t in (ts4, ts5)
    )


def test_uniqueness_against_declarative_oracle(type_ac, type_b1, type_b2):
    for g, phi, fan in (type_ac, type_b1, type_b2):
        fanmiss = fan_missing_union(phi, fan)
        for tau in range(1, phi.k + 1):
            if tau in fanmiss:
                continue
            built = build_tau_sequence(g, phi, fan, tau)
            derived = tau_sequence_by_definition(g, phi, fan, tau)
            assert len(derived) == 1
            assert derived[0].to_json() == built.to_json()


def test_trichotomy_single_type(type_ac):
    g, phi, fan = type_ac
    for ts in all_tau_sequences(g, phi, fan):
        tags = [
            ts.type == "A",
            ts.type == "B",
            ts.type == "C",
        ]
        assert sum(tags) == 1
        if ts.type == "A":
            assert phi.missing_at(ts.vertices[-1]) == (ts.tau,)
        if ts.type == "B":
            assert ts.terminal_color in fan_missing_union(phi, fan)
        if ts.type == "C":
            assert ts.repeat_index is not None


def test_tau_rejects_fan_colors(type_b1):
    g, phi, fan = type_b1
    with pytest.raises(TauError):
        build_tau_sequence(g, phi, fan, 1)


def test_maximality_violation_surfaces():
    # aim tau at a full-degree neighbor: a maximum fan cannot leave such a
    # color outside its missing set, so the walk reports the violation
    g, phi = leaf_padded_gadget(4, [(3, 1)])
    phi, fan = normalized(g, phi)
    # color 2 sits on the edge r-u for a full-degree u; force the walk there
    # by asking for a tau that is present at r only on a Delta-vertex edge
    from fanforge.fans import Multifan

    shrunk = Multifan(
        center=fan.center,
        uncolored_edge=fan.uncolored_edge,
        sequence=fan.sequence,
        edge_colors=fan.edge_colors,
        missing={0: (1,), 1: (2, 4)},
    )
    # tau = 2 is missing at s1, so use a fabricated fan whose missing union
    # pretends otherwise; build_tau_sequence recomputes honestly and the
    # fan color is rejected instead
    with pytest.raises(TauError):
        build_tau_sequence(g, phi, shrunk, 2)


def test_a_shift_is_f_stable(type_ac):
    g, phi, fan = type_ac
    ts = build_tau_sequence(g, phi, fan, 4)
    phi2, step = apply_shifting(phi, fan, ts)
    assert phi2.validate()
    assert stability_class(phi2, phi, fan) == "F-stable"
    # the sequence's colors rotated
    assert phi2.misses(ts.vertices[0], 4)


def test_b_shift_moves_center_missing(type_b1):
    g, phi, fan = type_b1
    ts = build_tau_sequence(g, phi, fan, 3)
    phi2, step = apply_shifting(phi, fan, ts)
    assert stability_class(phi2, phi, fan) == "V(F-r)-stable"
    assert phi2.missing_at(fan.center) == (3,)


def test_empty_shift_is_identity(type_b1):
    g, phi, fan = type_b1
    assert shift(phi, fan.center, []).signature() == phi.signature()


def test_shift_rejected_atomically(type_b2):
    g, phi, fan = type_b2
    ts = build_tau_sequence(g, phi, fan, 3)
    before = phi.signature()
    with pytest.raises(ShiftIneligible):
        shift(phi, fan.center, ts.vertices)
    assert phi.signature() == before


def test_transcript_replay_byte_exact(type_b1):
    g, phi, fan = type_b1
    ts = build_tau_sequence(g, phi, fan, 3)
    phi2, step = apply_shifting(phi, fan, ts)
    tr = Transcript([step])
    assert tr.replay(phi).signature() == phi2.signature()
    # serialization shape
    assert tr.to_json() == [
        {"op": "shift", "center": fan.center, "range": list(ts.vertices)}
    ]


def test_relabel_is_bijection(type_b1):
    g, phi, fan = type_b1
    phi2 = relabel(phi, {1: 3, 3: 1})
    assert phi2.validate()
    assert phi2.missing_at(fan.center) == (3,)
    with pytest.raises(ValueError):
        relabel(phi, {1: 3})


def test_is_avoiding():
    t = Transcript()
    assert is_avoiding(t, [4])
    t.add(SwapStep((2, 5), 0))
    assert is_avoiding(t, [4])
    assert not is_avoiding(t, [5])
    t.add(ShiftStep(0, (2, 3)))
    t.add(RelabelStep(((1, 3), (3, 1))))
    assert is_avoiding(t, [1, 3])  # shifts and relabels are not Kempe changes
    assert t.has_non_swap_steps


def test_rs1_linkage_vacuous_on_c5(c5_fixture):
    g, phi = c5_fixture
    fan = grow_multifan(g, phi, 0, 1)
    v = verify_rs1_linkage(g, phi, fan, maximum_status="EXACT")
    assert v.status == "PASS"
    assert v.detail["taus"] == []
    v2 = verify_rs1_linkage(g, phi, fan, maximum_status="LOWER-BOUND")
    assert v2.status == "CONDITIONAL"


def test_witness_items_on_type_b1(type_b1):
    g, phi, fan = type_b1
    delta = degree_profile(g).delta
    closed = set(g.adjacency[fan.center]) | {fan.center}
    xs = [
        x
        for x in range(g.n)
        if x not in closed and phi.misses(x, 3)
    ]
    assert xs
    x = xs[0]
    for item in WITNESS_ITEMS:
        res = witness_tau_item(
            item, g, phi, fan, x, 3, maximum_status="LOWER-BOUND"
        )
        if item in ("v", "vi", "vii"):
            # terminal color 1 fires the exception clause
            assert res.status == "EXCLUDED"
        else:
            assert res.status == "WITNESS"
        if res.status == "WITNESS":
            assert res.transcript.replay(phi).signature() == res.phi.signature()
            assert is_avoiding(
                res.transcript, sorted(witness_avoid_set(item, 3, delta))
            )


def test_witness_items_on_type_b2(type_b2):
    g, phi, fan = type_b2
    delta = degree_profile(g).delta
    closed = set(g.adjacency[fan.center]) | {fan.center}
    # a leaf hanging off s1 with the tau-colored edge is linked with s1,
    # which forces the constructive b-shift route for item (iii)
    linked_x = None
    for x in range(g.n):
        if x in closed:
            continue
        if not (phi.misses(x, 3) or phi.misses(x, delta)):
            continue
        from fanforge.colorings import are_linked

        try:
            if are_linked(phi, fan.sequence[0], x, 3, delta):
                linked_x = x
                break
        except Exception:
            continue
    assert linked_x is not None
    # the gadget's fan is not certified maximum: the shift cannot cut the
    # s1 chain (the center is off it, unlike under a certified maximum),
    # so the outcome downgrades to UNKNOWN evidence instead of FAIL
    res = witness_tau_item(
        "iii", g, phi, fan, linked_x, 3, maximum_status="LOWER-BOUND"
    )
    assert res.status == "UNKNOWN"
    assert res.detail["checks"]["stability"] == "V(F-r)-stable"
    assert res.detail["checks"]["avoidance_ok"]
    assert not res.detail["checks"]["post_ok"]
    strict = witness_tau_item("iii", g, phi, fan, linked_x, 3)
    assert strict.status == "FAIL"


def test_witness_unless_clauses(type_b2):
    g, phi, fan = type_b2
    closed = set(g.adjacency[fan.center]) | {fan.center}
    x = next(
        x for x in range(g.n) if x not in closed and phi.misses(x, 3)
    )
    # terminal color 2 excludes item (iv) and the 2-inducing clause of (vi)/(vii)
    for item in ("iv", "vi", "vii"):
        res = witness_tau_item(item, g, phi, fan, x, 3)
        assert res.status == "EXCLUDED"
        assert "sequence" in res.detail


def test_witness_type_c_conversion(type_ac):
    g, phi, fan = type_ac
    delta = degree_profile(g).delta
    closed = set(g.adjacency[fan.center]) | {fan.center}
    xs = [x for x in range(g.n) if x not in closed and phi.misses(x, 3)]
    assert xs
    x = xs[0]
    for item in ("i", "ii", "iii", "iv"):
        res = witness_tau_item(item, g, phi, fan, x, 3)
        assert res.status in ("WITNESS", "EXCLUDED", "UNKNOWN")
        if res.status == "WITNESS":
            assert res.transcript.replay(phi).signature() == res.phi.signature()
            assert is_avoiding(
                res.transcript, sorted(witness_avoid_set(item, 3, delta))
            )


def test_witness_rotation_routes(type_ac):
    g, phi, fan = type_ac
    delta = degree_profile(g).delta
    closed = set(g.adjacency[fan.center]) | {fan.center}
    # tau = 4 is a rotation; pick x missing 4 outside the closed neighborhood
    xs = [x for x in range(g.n) if x not in closed and phi.misses(x, 4)]
    assert xs
    for item in WITNESS_ITEMS:
        res = witness_tau_item(item, g, phi, fan, xs[0], 4)
        assert res.status in ("WITNESS", "EXCLUDED", "UNKNOWN")
        if res.status == "WITNESS":
            assert res.transcript.replay(phi).signature() == res.phi.signature()
            assert is_avoiding(
                res.transcript, sorted(witness_avoid_set(item, 4, delta))
            )


def test_witness_precondition_errors(type_b1):
    g, phi, fan = type_b1
    with pytest.raises(ValueError):
        witness_tau_item("viii", g, phi, fan, 99, 3)
    with pytest.raises(TauError):
        witness_tau_item("i", g, phi, fan, fan.sequence[0], 3)  # x inside N[r]
    with pytest.raises(TauError):
        # tau must avoid the fan's missing set
        closed = set(g.adjacency[fan.center]) | {fan.center}
        x = next(xx for xx in range(g.n) if xx not in closed)
        witness_tau_item("i", g, phi, fan, x, 1)


def test_unlink_via_shifting(type_ac):
    g, phi, fan = type_ac
    # tau=4 rotation starts at spoke v1; its r-edge lies on the (4,*)-chain
    ts = build_tau_sequence(g, phi, fan, 4)
    v1 = ts.vertices[0]
    e1 = g.edge_id(fan.center, v1)
    hit = None
    for star in range(1, phi.k + 1):
        if star == 4:
            continue
        ch = phi.chain_at(v1, 4, star)
        if ch.kind != "path" or e1 not in ch.edges:
            continue
        a, b = ch.endpoints()
        if a in ts.vertices or b in ts.vertices:
            continue
        hit = (star, a, b)
        break
    assert hit is not None, "gadget should expose an unlinkable chain"
    star, x, y = hit
    phi2, tr = unlink_via_shifting(g, phi, fan, 4, star, x, y)
    from fanforge.colorings import are_linked

    assert not are_linked(phi2, x, y, 4, star)
    assert tr.replay(phi).signature() == phi2.signature()


def test_unlink_rejects_unrelated_endpoints(type_ac):
    g, phi, fan = type_ac
    with pytest.raises(ShiftIneligible):
        unlink_via_shifting(g, phi, fan, 4, 1, 0, 1)


def test_shifting_kempe_equivalent_hook(type_b1):
    # the open-question experiment: on this tiny instance, is the
    # B-shift's outcome reachable by swaps alone? Report either way.
    g, phi, fan = type_b1
    ts = build_tau_sequence(g, phi, fan, 3)
    shifted, _ = apply_shifting(phi, fan, ts)
    from fanforge.recolor import shifting_kempe_equivalent

    steps, exhausted = shifting_kempe_equivalent(phi, shifted, budget=3000)
    if steps is not None:
        # replay the found swap sequence and confirm byte equality
        cur = phi
        for st in steps:
            from fanforge.recolor import apply_step

            cur = apply_step(cur, st)
        assert cur.signature() == shifted.signature()
    else:
        # no claim either way; the search must have been bounded or clean
        assert isinstance(exhausted, bool)


def test_witness_rotation_endpoint_swap_route(type_ac):
    # items (i)/(ii) when the target rides the center's (1,tau)-chain:
    # swap at the rotation's end, shift, and (for i) relabel 1 <-> tau
    g, phi, fan = type_ac
    r = fan.center
    tied = [
        x
        for x in range(g.n)
        if x != r
        and not g.has_edge(r, x)
        and phi.misses(x, 4)
        and r in phi.chain_at(x, 1, 4).vertices
    ]
    assert tied
    x = tied[0]
    res_i = witness_tau_item("i", g, phi, fan, x, 4, maximum_status="LOWER-BOUND")
    assert res_i.status == "WITNESS"
    assert res_i.detail["route"] == "rotation-with-endpoint-swap"
    ops = [s.to_json()["op"] for s in res_i.transcript.steps]
    assert ops == ["swap", "shift", "relabel"]
    assert res_i.phi.misses(x, 1)
    res_ii = witness_tau_item("ii", g, phi, fan, x, 4, maximum_status="LOWER-BOUND")
    assert res_ii.status == "WITNESS"
    assert [s.to_json()["op"] for s in res_ii.transcript.steps] == ["swap", "shift"]
    assert res_ii.phi.missing_mask(fan.center) & res_ii.phi.missing_mask(x)


def test_witness_item_v_transparent_on_uncertified_fan(type_b2):
    # the type-B continuation for item (v) needs linkage facts that only a
    # certified maximum fan guarantees; on this gadget the construction
    # trips and the bounded avoidance-respecting search finds nothing, so
    # the verdict is UNKNOWN with the failure spelled out
    g, phi, fan = type_b2
    closed = set(g.adjacency[fan.center]) | {fan.center}
    statuses = {}
    for x in range(g.n):
        if x in closed or not (phi.misses(x, 3) or phi.misses(x, 4)):
            continue
        res = witness_tau_item(
            "v", g, phi, fan, x, 3, maximum_status="LOWER-BOUND"
        )
        statuses[x] = res.status
        assert res.status in ("WITNESS", "UNKNOWN")
        if res.status == "UNKNOWN":
            assert "construction_error" in res.detail or "checks" in res.detail
            assert "reason" in res.detail
    assert "UNKNOWN" in statuses.values()
    assert "WITNESS" in statuses.values()
