"""Completion complex of the Lambda-edge subgroup for triangle-free graphs.

The complex starts as a bouquet at the basepoint with one loop per
Lambda-edge ``st``: basepoint --s-- new vertex --t-- basepoint.  Phases
alternate: fold and identify squares until nothing changes, then perform
every available square attachment at once.  A round that attaches nothing
means the complex is saturated.

Edges are unoriented since every label is an involution.  Vertices and
edges are merged through union-find; squares are kept as 4-tuples of edge
ids in cyclic order and deduplicated by their canonicalised boundary.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

from .errors import NotSaturated, NotTriangleFree
from .graphs import SimplicialGraph, ThetaGraph, graph_predicates


class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root


@dataclass
class LabeledComplex:
    basepoint: int = 0
    vertices: _UnionFind = field(default_factory=_UnionFind)
    edge_uf: _UnionFind = field(default_factory=_UnionFind)
    edges: dict = field(default_factory=dict)  # live edge id -> [u, v, label]
    incidence: dict = field(default_factory=dict)  # vertex -> label -> set(edge ids)
    squares: set = field(default_factory=set)  # canonical 4-tuples of live edge ids

    # -- construction --------------------------------------------------------

    def add_vertex(self) -> int:
        v = self.vertices.make()
        self.incidence[v] = {}
        return v

    def add_edge(self, u: int, v: int, label: str) -> int:
        e = self.edge_uf.make()
        self.edges[e] = [u, v, label]
        self.incidence[u].setdefault(label, set()).add(e)
        self.incidence[v].setdefault(label, set()).add(e)
        return e

    def vertex_ids(self) -> list[int]:
        return sorted(self.incidence)

    def cell_count(self) -> int:
        return len(self.incidence) + len(self.edges) + len(self.squares)

    def other_end(self, e: int, u: int) -> int:
        a, b, _ = self.edges[e]
        return b if a == u else a

    def edge_at(self, u: int, label: str) -> int | None:
        es = self.incidence[u].get(label)
        return min(es) if es else None

    # -- folding -------------------------------------------------------------

    def _merge_vertices(self, x: int, y: int) -> int:
        """Merge y into x; returns the survivor."""
        x, y = self.vertices.find(x), self.vertices.find(y)
        if x == y:
            return x
        self.vertices.parent[y] = x
        for label, es in self.incidence.pop(y).items():
            for e in es:
                rec = self.edges[e]
                rec[0] = x if rec[0] == y else rec[0]
                rec[1] = x if rec[1] == y else rec[1]
            self.incidence[x].setdefault(label, set()).update(es)
        if self.basepoint == y:
            self.basepoint = x
        return x

    def _merge_edges(self, keep: int, drop: int):
        u, v, label = self.edges.pop(drop)
        for w in {u, v}:
            self.incidence[w][label].discard(drop)
        self.edge_uf.parent[drop] = keep

    def fold_saturate(self, rng: random.Random | None = None) -> bool:
        changed = False
        work = deque(self.incidence)
        if rng is not None:
            items = list(work)
            rng.shuffle(items)
            work = deque(items)
        while work:
            u = work.popleft()
            if u not in self.incidence:
                continue
            labels = [lab for lab, es in self.incidence[u].items() if len(es) > 1]
            if rng is not None:
                rng.shuffle(labels)
            for label in labels:
                if u not in self.incidence:
                    break
                es = sorted(self.incidence[u].get(label, ()))
                if len(es) < 2:
                    continue
                keep, drop = es[0], es[1]
                a = self.other_end(keep, u)
                b = self.other_end(drop, u)
                self._merge_edges(keep, drop)
                survivor = self._merge_vertices(a, b)
                changed = True
                work.append(survivor)
                work.append(self.vertices.find(u))
        if changed:
            self._identify_squares()
        return changed

    def _identify_squares(self):
        find = self.edge_uf.find
        self.squares = {_canonical_square(tuple(find(e) for e in sq)) for sq in self.squares}

    # -- squares -------------------------------------------------------------

    def _corners(self) -> set:
        out = set()
        for sq in self.squares:
            for i in range(4):
                e, f = sq[i], sq[(i + 1) % 4]
                shared = set(self.edges[e][:2]) & set(self.edges[f][:2])
                for u in shared:
                    out.add((u, frozenset((self.edges[e][2], self.edges[f][2]))))
        return out

    def pending_attachments(self, gamma: SimplicialGraph) -> list[tuple[int, str, str]]:
        corners = self._corners()
        out = []
        for u in sorted(self.incidence):
            labels = sorted(lab for lab, es in self.incidence[u].items() if es)
            for i, s1 in enumerate(labels):
                for s2 in labels[i + 1 :]:
                    if gamma.has_edge(s1, s2) and (u, frozenset((s1, s2))) not in corners:
                        out.append((u, s1, s2))
        return out

    def attach_square(self, u: int, s1: str, s2: str):
        e1 = self.edge_at(u, s1)
        e2 = self.edge_at(u, s2)
        p = self.other_end(e1, u)
        q = self.other_end(e2, u)
        r = self.add_vertex()
        f1 = self.add_edge(p, r, s2)
        f2 = self.add_edge(r, q, s1)
        self.squares.add(_canonical_square((e1, f1, f2, e2)))

    # -- reading off ---------------------------------------------------------

    def canonical_form(self) -> tuple:
        """Relabel vertices breadth-first from the basepoint, labels in sorted order."""
        order = {self.basepoint: 0}
        queue = deque([self.basepoint])
        while queue:
            u = queue.popleft()
            for label in sorted(self.incidence[u]):
                for e in sorted(self.incidence[u][label], key=lambda e: order.get(self.other_end(e, u), 1 << 60)):
                    w = self.other_end(e, u)
                    if w not in order:
                        order[w] = len(order)
                        queue.append(w)
        edge_name = {}
        for e, (a, b, label) in self.edges.items():
            x, y = sorted((order[a], order[b]))
            edge_name[e] = (x, y, label)
        squares = sorted(_canonical_square(tuple(edge_name[e] for e in sq)) for sq in self.squares)
        return (len(order), tuple(sorted(edge_name.values())), tuple(squares))

    def export_text(self) -> str:
        n, edges, squares = self.canonical_form()
        lines = [f"vertices {n}"]
        lines += [f"edge {a} {b} {label}" for a, b, label in edges]
        for sq in squares:
            lines.append("square " + " ; ".join(f"{a} {b} {label}" for a, b, label in sq))
        return "\n".join(lines) + "\n"


def _canonical_square(sq: tuple) -> tuple:
    rots = [sq[i:] + sq[:i] for i in range(4)]
    rev = sq[::-1]
    rots += [rev[i:] + rev[:i] for i in range(4)]
    return min(rots)


@dataclass
class CompletionResult:
    complex: LabeledComplex
    gamma: SimplicialGraph
    finite: bool
    saturated: bool
    rounds: int


def initial_complex(theta: ThetaGraph) -> LabeledComplex:
    cx = LabeledComplex()
    cx.basepoint = cx.add_vertex()
    for s, t in theta.lambda_edges:
        mid = cx.add_vertex()
        cx.add_edge(cx.basepoint, mid, s)
        cx.add_edge(mid, cx.basepoint, t)
    return cx


def build_completion(theta: ThetaGraph, cell_cap: int = 50_000, seed: int | None = None) -> CompletionResult:
    gamma = theta.gamma
    if not graph_predicates(gamma).triangle_free:
        raise NotTriangleFree("completion needs a triangle-free graph")
    rng = random.Random(seed) if seed is not None else None
    cx = initial_complex(theta)
    rounds = 0
    while True:
        rounds += 1
        cx.fold_saturate(rng)
        if cx.cell_count() > cell_cap:
            return CompletionResult(cx, gamma, False, False, rounds)
        pending = cx.pending_attachments(gamma)
        if not pending:
            return CompletionResult(cx, gamma, True, True, rounds)
        if rng is not None:
            rng.shuffle(pending)
        for u, s1, s2 in pending:
            cx.attach_square(u, s1, s2)


@dataclass(frozen=True)
class IndexReport:
    full_valence: bool
    vertex_count: int
    index: int | None


def index_report(cx: LabeledComplex, gamma: SimplicialGraph, saturated: bool = True) -> IndexReport:
    if not saturated or cx.pending_attachments(gamma):
        raise NotSaturated("index is only defined for a saturated completion")
    labels = set(gamma.vertices)
    full = all(labels <= {lab for lab, es in inc.items() if es} for inc in cx.incidence.values())
    n = len(cx.incidence)
    return IndexReport(full, n, n if full else None)


def parity_check(theta: ThetaGraph) -> dict:
    """Red/blue homomorphism to Z2 x Z2 for a two-component Lambda.

    Returns whether every Lambda-edge lies in the kernel and the order of
    the image of V(Gamma).
    """
    comps = theta.components
    if len(comps) != 2:
        raise ValueError("parity check needs exactly two Lambda-components")
    color = {}
    for v in theta.gamma.vertices:
        if v in comps[0]:
            color[v] = (1, 0)
        elif v in comps[1]:
            color[v] = (0, 1)
        else:
            color[v] = (1, 1)  # never reached when F1 holds without cones
    kills = True
    for s, t in theta.lambda_edges:
        image = ((color[s][0] + color[t][0]) % 2, (color[s][1] + color[t][1]) % 2)
        kills &= image == (0, 0)
    # the image subgroup is generated by the colours of the vertices
    image = {(0, 0)}
    for c in set(color.values()):
        image |= {((x + c[0]) % 2, (y + c[1]) % 2) for x, y in image}
    proper = all(color[a] != color[b] for a, b in theta.gamma.sorted_edges())
    return {"kills_lambda_edges": kills, "image_order": len(image), "proper_coloring": proper}
