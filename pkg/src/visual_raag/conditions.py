"""Graph-theoretic conditions on a Theta graph.

Each checker returns a :class:`ConditionReport`.  ``passed=False`` always
comes with a witness that can be re-validated independently.  The checkers
that need Lambda-convex hulls (R3, R4, R5 and the triangle configuration)
require R1 and raise :class:`PreconditionR1` otherwise.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Any

import networkx as nx

from .config import Caps
from .errors import PreconditionR1
from .graphs import (
    ThetaGraph,
    canonical_cycle,
    edge_key,
    enumerate_two_component_cycles,
    enumerate_two_component_squares,
    alternating_reach,
    graph_predicates,
    lambda_convex_hull,
    two_component_graph,
)


class Condition(str, enum.Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    R5 = "R5"
    F1 = "F1"
    F2 = "F2"
    TRIANGLE = "TriangleConfig"


@dataclass(frozen=True)
class ConditionReport:
    condition: Condition
    passed: bool
    witness: dict[str, Any] | None = None
    truncated: bool = False

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError(f"failed {self.condition.value} report needs a witness")

    def to_json(self) -> dict:
        return {
            "name": self.condition.value,
            "passed": self.passed,
            "witness": self.witness,
            "truncated": self.truncated,
        }


def _pass(cond: Condition, truncated: bool = False) -> ConditionReport:
    return ConditionReport(cond, True, None, truncated)


def _fail(cond: Condition, **witness) -> ConditionReport:
    return ConditionReport(cond, False, witness)


def _component_pairs(theta: ThetaGraph):
    return itertools.combinations(range(len(theta.components)), 2)


def _hull(theta: ThetaGraph, xs) -> frozenset:
    return frozenset(lambda_convex_hull(theta, xs).vertices)


def _require_r1(theta: ThetaGraph):
    if not check_R1(theta).passed:
        raise PreconditionR1("Lambda must be a forest")


# --- R1, R2 -----------------------------------------------------------------


def check_R1(theta: ThetaGraph) -> ConditionReport:
    lam = theta.lam
    for i, comp in enumerate(theta.components):
        n_edges = sum(1 for e in lam.edges if e <= comp)
        if n_edges >= len(comp):
            sub = lam.subgraph(comp).to_networkx()
            cycle = min(nx.minimum_cycle_basis(sub), key=lambda c: (len(c), sorted(c)))
            # a shortest cycle is chordless: walk it through its induced subgraph
            cyc_graph = sub.subgraph(cycle)
            order = [min(cycle)]
            while len(order) < len(cycle):
                order.append(min(w for w in cyc_graph[order[-1]] if w not in order))
            return _fail(Condition.R1, component=i, cycle=list(_canonical_loop(order)))
    return _pass(Condition.R1)


def _canonical_loop(seq):
    n = len(seq)
    cands = []
    for s in range(n):
        cands.append(tuple(seq[(s + i) % n] for i in range(n)))
        cands.append(tuple(seq[(s - i) % n] for i in range(n)))
    return min(cands)


def check_R2(theta: ThetaGraph) -> ConditionReport:
    idx = theta.component_index
    for a, b in theta.gamma.sorted_edges():
        if a in idx and b in idx and idx[a] == idx[b]:
            return _fail(Condition.R2, component=idx[a], pair=[a, b])
    return _pass(Condition.R2)


# --- R3, R4 -----------------------------------------------------------------


def check_R3(theta: ThetaGraph) -> ConditionReport:
    _require_r1(theta)
    adj = theta.gamma.adjacency
    for i, j in _component_pairs(theta):
        for sq in enumerate_two_component_squares(theta, i, j):
            tc = _hull(theta, sq.c_vertices)
            td = _hull(theta, sq.d_vertices)
            for x in sorted(tc):
                for y in sorted(td):
                    if y not in adj[x]:
                        return _fail(
                            Condition.R3,
                            components=[i, j],
                            square=list(sq.vertices),
                            hull_c=sorted(tc),
                            hull_d=sorted(td),
                            missing=[x, y],
                        )
    return _pass(Condition.R3)


def check_R4(theta: ThetaGraph, caps: Caps = Caps()) -> ConditionReport:
    _require_r1(theta)
    truncated = False
    for i, j in _component_pairs(theta):
        search = enumerate_two_component_cycles(theta, i, j, caps.cycle_max_len, caps.cycle_max_count)
        truncated |= search.truncated
        if not search.cycles:
            continue
        squares = enumerate_two_component_squares(theta, i, j)
        for cyc in search.cycles:
            if len(cyc) == 4:
                continue  # a square covers its own edges
            tc = _hull(theta, cyc.c_vertices)
            td = _hull(theta, cyc.d_vertices)
            allowed = set()
            for sq in squares:
                if set(sq.c_vertices) <= tc and set(sq.d_vertices) <= td:
                    allowed.update(frozenset(e) for e in sq.edges())
            for e in cyc.edges():
                if frozenset(e) not in allowed:
                    return ConditionReport(
                        Condition.R4,
                        False,
                        {
                            "components": [i, j],
                            "cycle": list(cyc.vertices),
                            "hull_c": sorted(tc),
                            "hull_d": sorted(td),
                            "edge": list(e),
                        },
                        truncated,
                    )
    return _pass(Condition.R4, truncated)


# --- three or more components ----------------------------------------------


def _oriented_squares(theta: ThetaGraph, c: int, d: int):
    """Squares between components c and d as (c, d, c', d') tuples."""
    lo, hi = min(c, d), max(c, d)
    for sq in enumerate_two_component_squares(theta, lo, hi):
        c1, d1, c2, d2 = sq.vertices
        yield (c1, d1, c2, d2) if c == lo else (d1, c1, d2, c2)


def check_R5(theta: ThetaGraph) -> ConditionReport:
    _require_r1(theta)
    comps = theta.components
    if len(comps) < 3:
        return _pass(Condition.R5)
    adj = theta.gamma.adjacency
    lam_edges = theta.lam.edges
    for a_id, c_id, d_id in itertools.permutations(range(len(comps)), 3):
        A = sorted(comps[a_id])
        for c, d, c2, d2 in _oriented_squares(theta, c_id, d_id):
            a_opts = [a for a in A if c in adj[a] and c2 in adj[a]]
            a2_opts = [a for a in A if d in adj[a] and d2 in adj[a]]
            if not a_opts or not a2_opts:
                continue
            tc = _hull(theta, (c, c2))
            td = _hull(theta, (d, d2))
            for a in a_opts:
                for a2 in a2_opts:
                    ta = _hull(theta, (a, a2))
                    for x, x2 in sorted(edge_key(e) for e in lam_edges if e <= ta):
                        join_c = all(y in adj[x] and y in adj[x2] for y in tc)
                        join_d = all(y in adj[x] and y in adj[x2] for y in td)
                        if not (join_c or join_d):
                            return _fail(
                                Condition.R5,
                                components=[a_id, c_id, d_id],
                                square=[c, d, c2, d2],
                                a=a,
                                a_prime=a2,
                                edge=[x, x2],
                            )
    return _pass(Condition.R5)


def check_triangle_config(theta: ThetaGraph) -> ConditionReport:
    """``passed`` means no triangle-forcing configuration is present."""
    _require_r1(theta)
    comps = theta.components
    if len(comps) < 3:
        return _pass(Condition.TRIANGLE)
    for c_id, d_id in _component_pairs(theta):
        squares = enumerate_two_component_squares(theta, c_id, d_id)
        if not squares:
            continue
        for a_id in range(len(comps)):
            if a_id in (c_id, d_id):
                continue
            for sq in squares:
                c, d, c2, d2 = sq.vertices
                if c2 in alternating_reach(theta, c_id, a_id, c) and d2 in alternating_reach(theta, d_id, a_id, d):
                    return _fail(
                        Condition.TRIANGLE,
                        components=[a_id, c_id, d_id],
                        square=list(sq.vertices),
                        c_path=[c, c2],
                        d_path=[d, d2],
                    )
    return _pass(Condition.TRIANGLE)


# --- finite index -------------------------------------------------------------


def check_F1(theta: ThetaGraph) -> ConditionReport:
    cones = graph_predicates(theta.gamma).cone_vertices
    covered = theta.lambda_vertices
    for v in sorted(theta.gamma.vertices):
        if v not in cones and v not in covered:
            return _fail(Condition.F1, vertex=v)
    return _pass(Condition.F1)


def check_F2(theta: ThetaGraph) -> ConditionReport:
    comps = theta.components
    for i, j in _component_pairs(theta):
        h = two_component_graph(theta, i, j)
        label = {v: k for k, block in enumerate(nx.connected_components(h)) for v in block}
        for s in sorted(comps[i]):
            for t in sorted(comps[j]):
                if label[s] != label[t]:
                    return _fail(Condition.F2, components=[i, j], pair=[s, t])
    return _pass(Condition.F2)


CHECKERS = {
    Condition.R1: check_R1,
    Condition.R2: check_R2,
    Condition.R3: check_R3,
    Condition.R4: check_R4,
    Condition.R5: check_R5,
    Condition.TRIANGLE: check_triangle_config,
    Condition.F1: check_F1,
    Condition.F2: check_F2,
}

NEEDS_R1 = {Condition.R3, Condition.R4, Condition.R5, Condition.TRIANGLE}


def run_checks(theta: ThetaGraph, which=None, caps: Caps = Caps()) -> dict[Condition, ConditionReport | None]:
    """Run the selected checkers in canonical order.

    Hull-based checkers are skipped (value ``None``) when R1 fails.
    """
    which = list(CHECKERS) if which is None else [Condition(w) for w in which]
    r1 = check_R1(theta)
    out: dict[Condition, ConditionReport | None] = {}
    for cond in CHECKERS:
        if cond not in which:
            continue
        if cond is Condition.R1:
            out[cond] = r1
        elif cond in NEEDS_R1 and not r1.passed:
            out[cond] = None
        elif cond is Condition.R4:
            out[cond] = check_R4(theta, caps)
        else:
            out[cond] = CHECKERS[cond](theta)
    return out
