"""Simplicial graphs, the Gamma/Lambda overlay, and the combinatorial
primitives the condition checkers are built from.

Vertices are plain strings.  Everything here is immutable once built; the
derived data (adjacency, Lambda components) is computed lazily and cached on
the instance.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import networkx as nx

from .errors import (
    DuplicateEdge,
    InputError,
    LambdaNotInComplement,
    LoopEdge,
    MixedComponents,
    UnknownVertex,
    VertexNotInLambda,
    VertexNotInStatedComponent,
)

_BAD_NAME = re.compile(r"[\s|\-]")


def check_vertex_name(name: str) -> str:
    if not name or _BAD_NAME.search(name):
        raise InputError(f"invalid vertex name {name!r}")
    return name


def edge_key(e: Iterable[str]) -> tuple[str, str]:
    """Sorted endpoint pair, used wherever an edge must be ordered."""
    a, b = sorted(e)
    return a, b


@dataclass(frozen=True)
class SimplicialGraph:
    vertices: tuple[str, ...]
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise InputError("duplicate vertex names")
        for e in self.edges:
            if len(e) != 2:
                raise LoopEdge(f"loop edge on {sorted(e)}")
            for v in e:
                if v not in vs:
                    raise UnknownVertex(v)

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()) -> "SimplicialGraph":
        vertices = tuple(vertices)
        seen = set()
        for e in edges:
            e = tuple(e)
            if len(e) != 2:
                raise InputError(f"edge {e!r} must have two endpoints")
            a, b = e
            if a == b:
                raise LoopEdge(f"loop edge {a}-{a}")
            pair = frozenset((a, b))
            if pair in seen:
                raise DuplicateEdge(f"duplicate edge {a}-{b}")
            seen.add(pair)
        return cls(vertices, frozenset(seen))

    @cached_property
    def adjacency(self) -> dict[str, frozenset]:
        adj = {v: set() for v in self.vertices}
        for a, b in map(tuple, self.edges):
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(n) for v, n in adj.items()}

    def has_edge(self, a: str, b: str) -> bool:
        return b in self.adjacency[a]

    def neighbors(self, v: str) -> frozenset:
        return self.adjacency[v]

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(edge_key(e) for e in self.edges)

    def subgraph(self, vs: Iterable[str]) -> "SimplicialGraph":
        keep = set(vs)
        order = tuple(v for v in self.vertices if v in keep)
        return SimplicialGraph(order, frozenset(e for e in self.edges if e <= keep))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(sorted(self.vertices))
        g.add_edges_from(self.sorted_edges())
        return g

    def __len__(self):
        return len(self.vertices)


def complement(g: SimplicialGraph) -> SimplicialGraph:
    edges = frozenset(
        frozenset(p)
        for p in itertools.combinations(g.vertices, 2)
        if frozenset(p) not in g.edges
    )
    return SimplicialGraph(g.vertices, edges)


@dataclass(frozen=True)
class GraphPredicates:
    triangle_free: bool
    cone_vertices: frozenset
    chordal: bool


def graph_predicates(g: SimplicialGraph) -> GraphPredicates:
    adj = g.adjacency
    triangle_free = not any(adj[a] & adj[b] for a, b in map(tuple, g.edges))
    n = len(g.vertices)
    cones = frozenset(v for v in g.vertices if len(adj[v]) == n - 1)
    return GraphPredicates(triangle_free, cones, nx.is_chordal(g.to_networkx()))


def is_forest(g: SimplicialGraph) -> bool:
    return nx.is_forest(g.to_networkx()) if g.vertices else True


@dataclass(frozen=True)
class ThetaGraph:
    """Gamma together with a subgraph Lambda of its complement.

    ``lam`` lives on the full vertex set of ``gamma``; vertices not on any
    Lambda-edge are simply isolated in it and are not Lambda-vertices.
    """

    gamma: SimplicialGraph
    lam: SimplicialGraph

    @cached_property
    def lambda_vertices(self) -> frozenset:
        return frozenset(v for e in self.lam.edges for v in e)

    @cached_property
    def components(self) -> tuple[frozenset, ...]:
        """Lambda-components, ordered by their least vertex name."""
        seen: set = set()
        comps = []
        for v in sorted(self.lambda_vertices):
            if v in seen:
                continue
            comp = {v}
            queue = deque([v])
            while queue:
                u = queue.popleft()
                for w in self.lam.adjacency[u]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(comps)

    @cached_property
    def component_index(self) -> dict[str, int]:
        return {v: i for i, comp in enumerate(self.components) for v in comp}

    def component_of(self, v: str) -> int:
        try:
            return self.component_index[v]
        except KeyError:
            raise VertexNotInLambda(v) from None

    @property
    def lambda_edges(self) -> list[tuple[str, str]]:
        """Lambda-edges with the fixed orientation (lexicographically smaller endpoint first)."""
        return self.lam.sorted_edges()

    def relabel(self, mapping: dict[str, str]) -> "ThetaGraph":
        verts = [mapping[v] for v in self.gamma.vertices]
        return build_theta(
            SimplicialGraph.from_edges(verts, [(mapping[a], mapping[b]) for a, b in self.gamma.sorted_edges()]),
            [(mapping[a], mapping[b]) for a, b in self.lambda_edges],
        )


def build_theta(gamma: SimplicialGraph, lambda_edges: Iterable[Iterable[str]]) -> ThetaGraph:
    lam = SimplicialGraph.from_edges(gamma.vertices, lambda_edges)
    for e in lam.edges:
        if e in gamma.edges:
            a, b = edge_key(e)
            raise LambdaNotInComplement(f"Lambda-edge {a}-{b} is also a Gamma-edge")
    return ThetaGraph(gamma, lam)


# --- convex hulls -------------------------------------------------------


def _bfs_dist(g: SimplicialGraph, src: str, allowed: frozenset) -> dict[str, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w in allowed and w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def lambda_convex_hull(theta: ThetaGraph, X: Iterable[str]) -> SimplicialGraph:
    """Smallest geodesically closed Lambda-subgraph containing X.

    Computed as the fixed point of interval closure: keep adding every vertex
    lying on some shortest Lambda-path between two current members.
    """
    X = set(X)
    if not X:
        return SimplicialGraph((), frozenset())
    comp_ids = {theta.component_of(v) for v in X}
    if len(comp_ids) > 1:
        raise MixedComponents(f"vertices {sorted(X)} span several Lambda-components")
    comp = theta.components[comp_ids.pop()]
    dist = {v: _bfs_dist(theta.lam, v, comp) for v in comp} if len(X) > 1 else {}
    hull = set(X)
    changed = len(X) > 1
    while changed:
        changed = False
        members = sorted(hull)
        for a, b in itertools.combinations(members, 2):
            d = dist[a][b]
            for v in comp:
                if v not in hull and dist[a][v] + dist[v][b] == d:
                    hull.add(v)
                    changed = True
    return theta.lam.subgraph(hull)


# --- two-component paths, squares and cycles ---------------------------


@dataclass(frozen=True)
class TwoComponentCycle:
    c_component: int
    d_component: int
    vertices: tuple[str, ...]

    def __len__(self):
        return len(self.vertices)

    @property
    def c_vertices(self) -> tuple[str, ...]:
        return self.vertices[0::2]

    @property
    def d_vertices(self) -> tuple[str, ...]:
        return self.vertices[1::2]

    def edges(self) -> Iterator[tuple[str, str]]:
        vs = self.vertices
        for i in range(len(vs)):
            yield vs[i], vs[(i + 1) % len(vs)]


def canonical_cycle(seq: tuple[str, ...]) -> tuple[str, ...]:
    """Least rotation/reflection that keeps even positions on the starting side."""
    n = len(seq)
    best = None
    for start in range(0, n, 2):
        fwd = tuple(seq[(start + i) % n] for i in range(n))
        back = tuple(seq[(start - i) % n] for i in range(n))
        for cand in (fwd, back):
            if best is None or cand < best:
                best = cand
    return best


def _check_pair(theta: ThetaGraph, comp_c: int, comp_d: int):
    if comp_c == comp_d:
        raise ValueError("two-component objects need two distinct components")
    return theta.components[comp_c], theta.components[comp_d]


def two_component_graph(theta: ThetaGraph, comp_c: int, comp_d: int) -> nx.Graph:
    """Auxiliary bipartite graph: Gamma-edges running between the two components."""
    C, D = _check_pair(theta, comp_c, comp_d)
    h = nx.Graph()
    h.add_nodes_from(sorted(C | D))
    for c in sorted(C):
        for d in sorted(theta.gamma.adjacency[c] & D):
            h.add_edge(c, d)
    return h


def enumerate_two_component_squares(theta: ThetaGraph, comp_c: int, comp_d: int) -> list[TwoComponentCycle]:
    C, D = _check_pair(theta, comp_c, comp_d)
    adj = theta.gamma.adjacency
    out = []
    for c1, c2 in itertools.combinations(sorted(C), 2):
        common = sorted(adj[c1] & adj[c2] & D)
        for d1, d2 in itertools.combinations(common, 2):
            out.append(TwoComponentCycle(comp_c, comp_d, canonical_cycle((c1, d1, c2, d2))))
    return sorted(out, key=lambda cyc: cyc.vertices)


@dataclass(frozen=True)
class CycleSearch:
    cycles: tuple[TwoComponentCycle, ...]
    truncated: bool


def enumerate_two_component_cycles(
    theta: ThetaGraph, comp_c: int, comp_d: int, max_len: int = 20, max_count: int = 10_000
) -> CycleSearch:
    C, _ = _check_pair(theta, comp_c, comp_d)
    h = two_component_graph(theta, comp_c, comp_d)
    # cycles live inside biconnected blocks; a block larger than max_len may
    # hide cycles the length bound cut off
    truncated = any(len(block) > max_len for block in nx.biconnected_components(h))
    found = set()
    for cyc in nx.simple_cycles(h, length_bound=max_len):
        if len(found) >= max_count:
            truncated = True
            break
        if cyc[0] not in C:
            cyc = cyc[1:] + cyc[:1]
        found.add(canonical_cycle(tuple(cyc)))
    cycles = sorted(found, key=lambda vs: (len(vs), vs))
    return CycleSearch(tuple(TwoComponentCycle(comp_c, comp_d, vs) for vs in cycles), truncated)


def exists_two_component_path(theta: ThetaGraph, comp_s: int, comp_t: int, s: str, t: str) -> bool:
    S, T = _check_pair(theta, comp_s, comp_t)
    if s not in S:
        raise VertexNotInStatedComponent(f"{s} not in component {comp_s}")
    if t not in T:
        raise VertexNotInStatedComponent(f"{t} not in component {comp_t}")
    return t in alternating_reach(theta, comp_s, comp_t, s)


def alternating_reach(theta: ThetaGraph, comp_x: int, comp_y: int, start: str) -> set:
    """Vertices reachable from ``start`` by Gamma-paths alternating between two components."""
    X, Y = _check_pair(theta, comp_x, comp_y)
    adj = theta.gamma.adjacency
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        other = Y if u in X else X
        for w in adj[u] & other:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


# --- theta file format ---------------------------------------------------


def _parse_edge(token: str) -> tuple[str, str]:
    parts = token.split("-")
    if len(parts) != 2:
        raise InputError(f"bad edge token {token!r}")
    return check_vertex_name(parts[0]), check_vertex_name(parts[1])


def parse_graph_directives(text: str) -> tuple[dict[str, list[str]], list[str]]:
    """Split a directive file into ``{key: tokens}`` plus unrecognised lines."""
    directives: dict[str, list[str]] = {}
    other = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if sep and key in ("vertices", "gamma", "lambda"):
            directives.setdefault(key, []).extend(rest.split())
        else:
            other.append(line)
    return directives, other


def graph_from_directives(directives: dict[str, list[str]]) -> tuple[SimplicialGraph, list[tuple[str, str]]]:
    if "vertices" not in directives:
        raise InputError("missing 'vertices:' directive")
    verts = [check_vertex_name(v) for v in directives["vertices"]]
    gamma = SimplicialGraph.from_edges(verts, [_parse_edge(t) for t in directives.get("gamma", [])])
    lam = [_parse_edge(t) for t in directives.get("lambda", [])]
    return gamma, lam


def parse_theta(text: str) -> ThetaGraph:
    directives, other = parse_graph_directives(text)
    if other:
        raise InputError(f"unrecognised line {other[0]!r}")
    gamma, lam = graph_from_directives(directives)
    return build_theta(gamma, lam)


def format_theta(theta: ThetaGraph) -> str:
    lines = [
        "vertices: " + " ".join(theta.gamma.vertices),
        "gamma: " + " ".join(f"{a}-{b}" for a, b in theta.gamma.sorted_edges()),
        "lambda: " + " ".join(f"{a}-{b}" for a, b in theta.lambda_edges),
    ]
    return "\n".join(line.rstrip() for line in lines) + "\n"
