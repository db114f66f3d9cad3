import json
from collections import Counter

import pytest

from periodic_rpoly.affine import AffineElem, format_element, identity, parse_element, si_gap
from periodic_rpoly.laurent import ONE, Q, ZERO, IntLaurentPoly
from periodic_rpoly.periodic import (
    BRUHAT,
    QUANTUM,
    REFLECTION,
    TRANSLATION,
    DBGEdge,
    DBGSums,
    DBPath,
    PathError,
    PathSums,
    SIPath,
    apply_psi_L,
    apply_psi_R,
    build_dbg,
    check_chain_monotone,
    check_decomposition,
    dbg_edge,
    dbg_to_dot,
    dbg_to_json,
    dbp_deg,
    dbp_len_prime,
    dbp_to_sipath,
    descent_bounds,
    descent_set,
    edge_d,
    enumerate_dbp,
    enumerate_si_paths,
    make_edge,
    path_deg,
    path_len,
    path_sets,
    periodic_r_dbg,
    periodic_r_paths,
    r_restricted,
    si_edge_candidates,
    sipath_to_dbp,
    t_restricted,
)
from periodic_rpoly.periodic.suite import (
    Engine,
    check_identity_suite,
    check_r4,
    class_representatives,
    elements_in_radius,
    sweep_decomposition,
    sweep_model_equivalence,
)
from periodic_rpoly.rootsys import all_elements, all_reflection_orders, root_system
from periodic_rpoly.rpoly import r_dyer, r_recursive

GOLDEN = Q**4 * (Q - 1) + 2 * Q**3 * (Q - 1) ** 3 + Q**4 * (Q - 1) ** 3
GOLDEN_CENSUS = Counter({(4, 1): 1, (3, 3): 2, (4, 3): 1})


def by_labels(paths, rs, *labels):
    want = [rs.index[x] for x in labels]
    return [p for p in paths if list(p.labels) == want]


def test_golden_value_both_models(golden_pair, a2_order):
    y, w = golden_pair
    assert GOLDEN == Q**7 - Q**6 - 2 * Q**5 + 4 * Q**4 - 2 * Q**3
    assert periodic_r_paths(y, w, a2_order) == GOLDEN
    assert periodic_r_dbg(y, w, a2_order) == GOLDEN
    assert PathSums(a2_order).total(y, w) == GOLDEN
    assert DBGSums(a2_order).total(y, w) == GOLDEN
    assert periodic_r_paths(y, w, a2_order, strict=True) == GOLDEN


def test_golden_census(golden_pair, a2_order):
    y, w = golden_pair
    si = enumerate_si_paths(y, w, a2_order)
    db = enumerate_dbp(y, w, a2_order)
    assert Counter((path_deg(p), path_len(p)) for p in si) == GOLDEN_CENSUS
    assert Counter((dbp_deg(p), dbp_len_prime(p)) for p in db) == GOLDEN_CENSUS
    assert {dbp_to_sipath(p) for p in db} == set(si)


def test_golden_path_sets(golden_pair, a2_order, a2):
    y, w = golden_pair
    si = enumerate_si_paths(y, w, a2_order)
    th = (1, 1)
    (d3,) = [p for p in si if {e.kind for e in p.edges} == {TRANSLATION, REFLECTION}]
    e, r, t, T = path_sets(d3)
    assert T == (1, 0, 1)
    assert t == {a2.index[(1, 0)], a2.index[(0, 1)]} and r == {a2.index[th]}
    d2 = [p for p in by_labels(si, a2, (1, 0), th, (0, 1)) if all(x.kind == REFLECTION for x in p.edges)]
    (d2,) = [p for p in d2 if path_deg(p) == 3]
    assert path_sets(d2)[1] == frozenset(range(3)) and not path_sets(d2)[2]
    (d1,) = [p for p in si if len(p) == 1]
    assert edge_d(d1.edges[0]) == 5 and path_deg(d1) == 4


def test_edge_d_examples(a2):
    e = identity(a2)
    th, a1 = a2.theta, a2.simple_root(1)
    assert edge_d(make_edge(e, th, 1, REFLECTION)) == 5
    assert edge_d(make_edge(e, a1, 1, TRANSLATION)) == 2
    assert edge_d(make_edge(e, a1, 0, REFLECTION)) == 1
    with pytest.raises(PathError):
        make_edge(e, a1, 0, TRANSLATION)


def test_edge_candidates(a2):
    e = identity(a2)
    th = a2.theta
    assert {(c.kind, c.m) for c in si_edge_candidates(e, th, (0, 0))} == {(REFLECTION, 0)}
    got = {(c.kind, c.m) for c in si_edge_candidates(e, th, (1, 1))}
    assert got == {(REFLECTION, 0), (REFLECTION, 1), (TRANSLATION, 1)}
    s1 = parse_element(a2, "1")
    targets = {c.target for c in si_edge_candidates(s1, th, (1, 1))}
    assert parse_element(a2, "cl=2,1;wt=1,1") in targets
    assert si_edge_candidates(e, th, (-1, 0)) == []


def test_trivial_pairs(a2, a2_order):
    e, s1 = identity(a2), parse_element(a2, "1")
    assert [len(p) for p in enumerate_si_paths(s1, s1, a2_order)] == [0]
    (p,) = enumerate_si_paths(e, s1, a2_order)
    assert p.labels == (a2.simple_root(1),) and p.edges[0].m == 0
    (d,) = enumerate_dbp(e, s1, a2_order)
    assert [x.kind for x in d.edges] == [BRUHAT]
    assert path_deg(SIPath(e, (), a2_order)) == 0 and path_sets(SIPath(e, (), a2_order))[3] == (0, 0, 0)
    assert dbp_deg(DBPath(e, e, (), a2_order)) == 0 == dbp_len_prime(DBPath(e, e, (), a2_order))
    for x in elements_in_radius(a2, 1)[:12]:
        assert periodic_r_paths(x, x, a2_order) == ONE == periodic_r_dbg(x, x, a2_order)
    assert periodic_r_paths(e, parse_element(a2, "cl=;wt=-1,0"), a2_order) == ZERO


def test_dbg_examples(a2):
    e, w0, s1 = a2.identity, a2.longest_element, a2.s(1)
    th = a2.theta
    assert dbg_edge(e, th) == DBGEdge(e, w0, th, 2, BRUHAT)
    assert (dbg_edge(w0, th).kind, dbg_edge(w0, th).d, dbg_edge(w0, th).target) == (QUANTUM, 1, e)
    q = dbg_edge(s1, a2.simple_root(1))
    assert (q.kind, q.d, q.target) == (QUANTUM, 1, e)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"])
def test_quantum_weights_positive(name):
    rs = root_system(name)
    edges = build_dbg(rs)
    assert len(edges) == len(all_elements(rs)) * rs.n_pos
    for e in edges:
        assert e.d >= 1
        assert (e.kind == BRUHAT) == (e.target.length > e.source.length)


def test_golden_dbg_paths(golden_pair, a2_order):
    y, w = golden_pair
    db = enumerate_dbp(y, w, a2_order)
    (d1,) = [p for p in db if dbp_len_prime(p) == 1]
    assert [e.d for e in d1.edges] == [2, 1, 2]
    (d4,) = [p for p in db if len(p) == 7]
    assert dbp_len_prime(d4) == 3 and dbp_deg(d4) == 4


def test_restricted_sums(golden_pair, a2_order, a2):
    y, w = golden_pair
    assert r_restricted(y, w, a2_order) == 2 * Q**5 - 5 * Q**4 + 5 * Q**3 - 2 * Q**2
    t = parse_element(a2, "cl=;wt=1,1")
    assert t_restricted(y, t, a2_order) == Q**4 - Q**3
    assert t_restricted(y, parse_element(a2, "1"), a2_order) == ZERO
    for a in all_elements(a2):
        for b in all_elements(a2):
            ya, wb = AffineElem(a, (0, 0)), AffineElem(b, (0, 0))
            assert r_restricted(ya, wb, a2_order) == r_dyer(a, b, a2_order)
    assert t_restricted(y, y, a2_order) == ONE == r_restricted(y, y, a2_order)


def test_finite_restriction_agrees(a2):
    for order in all_reflection_orders(a2):
        for a in all_elements(a2):
            for b in all_elements(a2):
                got = periodic_r_paths(AffineElem(a, (0, 0)), AffineElem(b, (0, 0)), order)
                assert got == r_recursive(a, b)


@pytest.mark.parametrize("name", ["A2", "B2"])
def test_memoized_sums_match_enumeration(name):
    rs = root_system(name)
    for order in all_reflection_orders(rs):
        sums = PathSums(order)
        for y, w in class_representatives(rs, 1):
            if si_gap(y, w) > 11:
                continue
            assert sums.total(y, w) == periodic_r_paths(y, w, order)
            assert sums.total(y, w, "r") == r_restricted(y, w, order)
            assert sums.total(y, w, "t") == t_restricted(y, w, order)


def test_strict_mode_matches_default(a2, a2_order):
    for y, w in class_representatives(a2, 1):
        fast = enumerate_si_paths(y, w, a2_order)
        assert enumerate_si_paths(y, w, a2_order, strict=True) == fast
        assert all(check_chain_monotone(p) for p in fast)


def test_json_round_trips(golden_pair, a2_order):
    y, w = golden_pair
    for p in enumerate_si_paths(y, w, a2_order):
        data = json.loads(json.dumps(p.to_json()))
        assert SIPath.from_json(data, a2_order) == p
    for p in enumerate_dbp(y, w, a2_order):
        data = json.loads(json.dumps(p.to_json()))
        assert DBPath.from_json(data, a2_order) == p
    poly = periodic_r_paths(y, w, a2_order)
    assert IntLaurentPoly.from_json(json.loads(json.dumps(poly.to_json()))) == poly


def test_json_rejects_broken_paths(golden_pair, a2_order):
    y, w = golden_pair
    p = enumerate_si_paths(y, w, a2_order)[0]
    data = p.to_json()
    data["edges"] = list(reversed(data["edges"]))
    with pytest.raises(PathError):
        SIPath.from_json(data, a2_order)


def test_bijection_round_trip(a2_order):
    rs = a2_order.rs
    for y, w in class_representatives(rs, 1):
        for p in enumerate_dbp(y, w, a2_order):
            s = dbp_to_sipath(p)
            assert sipath_to_dbp(s) == p
            assert path_deg(s) == dbp_deg(p) and path_len(s) == dbp_len_prime(p)


def test_model_equivalence_sweep():
    res = sweep_model_equivalence(root_system("A2"), 1)
    assert res.passed, res.failures


def test_descent_examples(a2, a2_order):
    e, s1 = identity(a2), parse_element(a2, "1")
    (p,) = enumerate_si_paths(e, s1, a2_order)
    assert descent_set(p, 1) == {1}
    q = apply_psi_L(p, 1)
    assert q.start == s1 and len(q) == 0
    assert descent_set(p, 2) == set()
    assert descent_bounds(p, 2) == (2, 0)
    with pytest.raises(PathError):
        apply_psi_R(p, 2)


def test_descent_sets_need_reflection_paths(golden_pair, a2_order):
    y, w = golden_pair
    mixed = [p for p in enumerate_si_paths(y, w, a2_order) if any(e.kind == TRANSLATION for e in p.edges)]
    with pytest.raises(PathError):
        descent_set(mixed[0], 1)


@pytest.mark.parametrize("name", ["A2", "B2"])
def test_psi_maps_are_well_defined(name):
    rs = root_system(name)
    order = all_reflection_orders(rs)[0]
    seen = 0
    for y, w in class_representatives(rs, 1):
        if si_gap(y, w) > 9:
            continue
        for p in enumerate_si_paths(y, w, order, kinds=(REFLECTION,)):
            for s in range(rs.rank + 1):
                if not descent_set(p, s):
                    continue
                left, right = apply_psi_L(p, s), apply_psi_R(p, s)
                assert len(left) == len(right) == len(p) - 1
                assert left.end == w and right.start == y
                seen += 1
    assert seen > 0


def test_decomposition_examples(golden_pair, a2_order, b2):
    y, w = golden_pair
    assert check_decomposition(y, w, a2_order)
    assert check_decomposition(w, w, a2_order)
    res = sweep_decomposition(b2, 1, samples=50, seed=3)
    assert res.passed and res.instances == 50


def test_identity_suite_small(a2, a2_order):
    report = check_identity_suite(a2, a2_order, 1)
    assert report.passed, report.format()


def test_r4_single_translation(a2, a2_order):
    res = check_r4(Engine(a2_order), 1, ys=[identity(a2)])
    assert res.passed and res.instances == 9


def test_dot_export(a2):
    dot = dbg_to_dot(a2)
    assert dot.count("->") == 18
    assert sum(1 for line in dot.splitlines() if line.strip().endswith('";') and "->" not in line) == 6
    assert dot.count("style=dashed") == sum(1 for e in build_dbg(a2) if e.kind == QUANTUM)
    a1 = json.loads(dbg_to_json(root_system("A1")))
    assert len(a1["vertices"]) == 2
    assert sorted(e["kind"] for e in a1["edges"]) == [BRUHAT, QUANTUM]


def test_dot_parses(b2):
    pydot = pytest.importorskip("pydot")
    (graph,) = pydot.graph_from_dot_data(dbg_to_dot(b2))
    assert len(graph.get_edges()) == 8 * 4
    assert len(graph.get_nodes()) == 8


def test_paths_need_common_root_system(a2, a2_order):
    b2 = root_system("B2")
    with pytest.raises(PathError):
        enumerate_si_paths(identity(b2), identity(b2), a2_order)


def test_format_element_in_path_json(golden_pair, a2_order):
    y, w = golden_pair
    p = enumerate_si_paths(y, w, a2_order)[0]
    assert p.to_json()["edges"][-1]["target"] == format_element(w)
