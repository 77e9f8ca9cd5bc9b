import itertools
import random

import networkx as nx
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tests.oracles import bfs_reachable, brute_convex_hull, brute_two_component_cycles
from tests.test_graph_core import thetas
from visual_raag.conditions import (
    Condition,
    check_F1,
    check_F2,
    check_R1,
    check_R2,
    check_R3,
    check_R4,
    check_R5,
    check_triangle_config,
    run_checks,
)
from visual_raag.config import Caps
from visual_raag.errors import PreconditionR1
from visual_raag.families import (
    c4_diagonals,
    delta_nk,
    gamma_n,
    hexagon,
    lambda_path_on_edgeless,
    r5_counterexample,
)
from visual_raag.graphs import SimplicialGraph, build_theta, graph_predicates

# --- independent re-checks ------------------------------------------------------


def _hull(theta, xs):
    return brute_convex_hull(theta.lam.to_networkx(), xs)


def _h_adj(theta, i, j):
    C, D = theta.components[i], theta.components[j]
    adj = {v: set() for v in C | D}
    for a, b in theta.gamma.sorted_edges():
        if (a in C and b in D) or (a in D and b in C):
            adj[a].add(b)
            adj[b].add(a)
    return adj


def _squares(theta, i, j):
    C, D = theta.components[i], theta.components[j]
    out = []
    for c1, c2 in itertools.combinations(sorted(C), 2):
        for d1, d2 in itertools.combinations(sorted(D), 2):
            if all(theta.gamma.has_edge(c, d) for c in (c1, c2) for d in (d1, d2)):
                out.append(((c1, c2), (d1, d2)))
    return out


def brute_R3(theta):
    for i, j in itertools.combinations(range(len(theta.components)), 2):
        for cs, ds in _squares(theta, i, j):
            tc, td = _hull(theta, cs), _hull(theta, ds)
            if not all(theta.gamma.has_edge(x, y) for x in tc for y in td):
                return False
    return True


def brute_R4(theta):
    for i, j in itertools.combinations(range(len(theta.components)), 2):
        C, D = theta.components[i], theta.components[j]
        sqs = _squares(theta, i, j)
        for cyc in brute_two_component_cycles(theta.gamma.sorted_edges(), C, D, max_len=20):
            verts = set().union(*cyc)
            tc, td = _hull(theta, verts & C), _hull(theta, verts & D)
            allowed = set()
            for cs, ds in sqs:
                if set(cs) <= tc and set(ds) <= td:
                    allowed |= {frozenset((c, d)) for c in cs for d in ds}
            if len(cyc) > 4 and not cyc <= allowed:
                return False
    return True


def validate_witness(theta, rep):
    w = rep.witness
    g = theta.gamma
    cond = rep.condition
    if cond is Condition.R1:
        cyc = w["cycle"]
        assert len(cyc) >= 3 and len(set(cyc)) == len(cyc)
        assert all(theta.lam.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))
    elif cond is Condition.R2:
        a, b = w["pair"]
        assert g.has_edge(a, b) and theta.component_of(a) == theta.component_of(b)
    elif cond is Condition.R3:
        c1, d1, c2, d2 = w["square"]
        assert all(g.has_edge(c, d) for c in (c1, c2) for d in (d1, d2))
        assert set(w["hull_c"]) == _hull(theta, (c1, c2)) and set(w["hull_d"]) == _hull(theta, (d1, d2))
        x, y = w["missing"]
        assert x in w["hull_c"] and y in w["hull_d"] and not g.has_edge(x, y)
    elif cond is Condition.R4:
        cyc = w["cycle"]
        assert all(g.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))
        i, j = w["components"]
        C, D = theta.components[i], theta.components[j]
        assert set(w["hull_c"]) == _hull(theta, set(cyc) & C)
        assert set(w["hull_d"]) == _hull(theta, set(cyc) & D)
        e = frozenset(w["edge"])
        assert e in {frozenset(p) for p in zip(cyc, cyc[1:] + cyc[:1])}
        for cs, ds in _squares(theta, i, j):
            if set(cs) <= set(w["hull_c"]) and set(ds) <= set(w["hull_d"]):
                assert e not in {frozenset((c, d)) for c in cs for d in ds}
    elif cond is Condition.R5:
        c, d, c2, d2 = w["square"]
        a, a2 = w["a"], w["a_prime"]
        assert all(g.has_edge(x, y) for x in (c, c2) for y in (d, d2))
        assert g.has_edge(a, c) and g.has_edge(a, c2) and g.has_edge(a2, d) and g.has_edge(a2, d2)
        x, x2 = w["edge"]
        assert theta.lam.has_edge(x, x2) and {x, x2} <= _hull(theta, (a, a2))
        for hull in (_hull(theta, (c, c2)), _hull(theta, (d, d2))):
            assert not all(g.has_edge(v, y) for v in (x, x2) for y in hull)
    elif cond is Condition.TRIANGLE:
        a_id, c_id, d_id = w["components"]
        c, c2 = w["c_path"]
        d, d2 = w["d_path"]
        assert c2 in bfs_reachable(_h_adj(theta, min(a_id, c_id), max(a_id, c_id)), c)
        assert d2 in bfs_reachable(_h_adj(theta, min(a_id, d_id), max(a_id, d_id)), d)
    elif cond is Condition.F1:
        v = w["vertex"]
        assert v not in theta.lambda_vertices and v not in graph_predicates(g).cone_vertices
    elif cond is Condition.F2:
        s, t = w["pair"]
        i, j = w["components"]
        assert t not in bfs_reachable(_h_adj(theta, i, j), s)


# --- verdict table for the fixtures ------------------------------------------------


def profile(theta):
    return {c.value: (None if r is None else r.passed) for c, r in run_checks(theta).items()}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_gamma_n_passes_everything(n):
    assert all(profile(gamma_n(n)).values())


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 1), (4, 2)])
def test_delta_nk_passes_everything(n, k):
    assert all(profile(delta_nk(n, k)).values())


def test_hexagon_profile():
    p = profile(hexagon())
    assert p["R1"] and p["R2"] and p["R3"] and p["R4"] is False


def test_r5_profile():
    p = profile(r5_counterexample())
    assert p["R1"] and p["R2"] and p["R3"] and p["R4"]
    assert p["R5"] is False and p["TriangleConfig"] is False


def test_small_examples():
    c4 = c4_diagonals()
    assert all(profile(c4).values())
    single = build_theta(c4.gamma, [("a", "c")])
    f1 = check_F1(single)
    assert not f1.passed and f1.witness == {"vertex": "b"}
    star = SimplicialGraph.from_edges("cxyz", [("c", "x"), ("c", "y"), ("c", "z")])
    assert check_F1(build_theta(star, [("x", "y"), ("y", "z")])).passed
    assert all(profile(lambda_path_on_edgeless()).values())


def test_f2_fails_on_disjoint_squares():
    vs = ["a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2"]
    edges = [(f"{p}{i}", f"{q}{i}") for i in (1, 2) for p, q in (("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"))]
    theta = build_theta(SimplicialGraph.from_edges(vs, edges), [("a1", "c1"), ("a1", "c2"), ("b1", "d1"), ("b2", "d2")])
    rep = check_F2(theta)
    assert not rep.passed
    validate_witness(theta, rep)


def test_hull_checks_require_r1():
    cyc = build_theta(SimplicialGraph.from_edges("abc", []), [("a", "b"), ("b", "c"), ("a", "c")])
    assert not check_R1(cyc).passed
    for check in (check_R3, check_R4, check_R5, check_triangle_config):
        with pytest.raises(PreconditionR1):
            check(cyc)
    assert run_checks(cyc)[Condition.R3] is None


def test_many_component_checks_vacuous_on_two():
    for theta in (gamma_n(3), hexagon(), c4_diagonals()):
        assert check_R5(theta).passed and check_triangle_config(theta).passed


def test_r4_truncation_is_reported():
    rep = check_R4(gamma_n(5), Caps(cycle_max_count=2))
    assert rep.truncated


# --- properties --------------------------------------------------------------------


@settings(max_examples=120, deadline=None)
@given(thetas(max_vertices=7, forest=True))
def test_witnesses_revalidate_and_match_brute_force(theta):
    reports = run_checks(theta)
    for rep in reports.values():
        if rep is not None and not rep.passed:
            validate_witness(theta, rep)
    assert reports[Condition.R3].passed == brute_R3(theta)
    assert reports[Condition.R4].passed == brute_R4(theta)


@settings(max_examples=60, deadline=None)
@given(thetas(max_vertices=7))
def test_r1_and_r2_witnesses_on_arbitrary_lambda(theta):
    for rep in (check_R1(theta), check_R2(theta), check_F1(theta), check_F2(theta)):
        if not rep.passed:
            validate_witness(theta, rep)
    lam = theta.lam.to_networkx()
    assert check_R1(theta).passed == nx.is_forest(lam) if lam.number_of_nodes() else True


@st.composite
def two_sided_thetas(draw):
    """Gamma bipartite between sides A and B, Lambda a spanning tree on each side."""
    na, nb = draw(st.integers(2, 4)), draw(st.integers(2, 4))
    A = [f"a{i}" for i in range(na)]
    B = [f"b{i}" for i in range(nb)]
    edges = [(a, b) for a in A for b in B if draw(st.booleans())]
    lam = []
    for side in (A, B):
        for k in range(1, len(side)):
            lam.append((side[draw(st.integers(0, k - 1))], side[k]))
    return build_theta(SimplicialGraph.from_edges(A + B, edges), lam)


@settings(max_examples=150, deadline=None)
@given(two_sided_thetas())
def test_f2_follows_for_connected_cone_free_graphs(theta):
    # the star K_{1,4} with Lambda = {x1-x2, x3-x4} shows the cone-free hypothesis is needed
    g = theta.gamma
    assume(nx.is_connected(g.to_networkx()) and not graph_predicates(g).cone_vertices)
    assert len(theta.components) == 2
    assert check_R2(theta).passed and check_F1(theta).passed
    assert check_F2(theta).passed


def test_f2_remark_needs_cone_free():
    star = SimplicialGraph.from_edges("cwxyz", [("c", v) for v in "wxyz"])
    theta = build_theta(star, [("w", "x"), ("y", "z")])
    assert check_R2(theta).passed and check_F1(theta).passed
    assert not check_F2(theta).passed


def _renamed(theta, seed):
    names = list(theta.gamma.vertices)
    rng = random.Random(seed)
    shuffled = names[:]
    rng.shuffle(shuffled)
    mapping = {a: f"q{b}" for a, b in zip(names, shuffled)}
    return theta.relabel(mapping)


@pytest.mark.parametrize(
    "theta", [gamma_n(3), gamma_n(4), delta_nk(3, 2), hexagon(), r5_counterexample(), c4_diagonals()]
)
def test_profile_invariant_under_renaming(theta):
    base = profile(theta)
    for seed in range(3):
        assert profile(_renamed(theta, seed)) == base
