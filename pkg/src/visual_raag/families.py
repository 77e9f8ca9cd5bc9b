"""Concrete (Gamma, Lambda) pairs used as fixtures.

gamma_n
    2n-gon c1 d1 ... cn dn, plus x adjacent to every d_i and y adjacent to
    every c_i and to x.  Lambda is the star of x over the c_i together with
    the star of y over the d_i.
delta_nk
    k copies of the bipartite block with poles a1, a0 over the path
    b1 ... bn (a_i adjacent to b_{i-1}, b_i), glued along everything except
    a0.  Lambda is the star of a1 over the other a-vertices plus the path
    b1 ... bn.
hexagon
    6-cycle 1..6 with Lambda = 1-3-5 and 2-4-6.
r5_counterexample
    the square c d c' d' with a joined to c, c' and a' joined to d, d';
    Lambda = {a a', c c', d d'}.
c4_diagonals
    the 4-cycle a b c d with both diagonals as Lambda.
lambda_path_on_edgeless
    n isolated vertices with Lambda the path 1-2-...-n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BadParams
from .graphs import SimplicialGraph, ThetaGraph, build_theta

FAMILY_NAMES = (
    "gamma_n",
    "delta_nk",
    "hexagon",
    "r5_counterexample",
    "c4_diagonals",
    "lambda_path_on_edgeless",
)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise BadParams(f"unknown family {self.name!r}")
        for key, value in self.params.items():
            if not isinstance(value, int):
                raise BadParams(f"parameter {key} must be an integer")


def _theta(vertices, gamma_edges, lambda_edges) -> ThetaGraph:
    return build_theta(SimplicialGraph.from_edges(vertices, gamma_edges), lambda_edges)


def gamma_n(n: int) -> ThetaGraph:
    if n < 3:
        raise BadParams("gamma_n needs n >= 3")
    cs = [f"c{i}" for i in range(1, n + 1)]
    ds = [f"d{i}" for i in range(1, n + 1)]
    ring = [v for pair in zip(cs, ds) for v in pair]
    edges = [(ring[i], ring[(i + 1) % (2 * n)]) for i in range(2 * n)]
    edges += [("x", d) for d in ds] + [("y", c) for c in cs] + [("x", "y")]
    lam = [("x", c) for c in cs] + [("y", d) for d in ds]
    return _theta(ring + ["x", "y"], edges, lam)


def delta_nk(n: int, k: int) -> ThetaGraph:
    if n < 3 or k < 1:
        raise BadParams("delta_nk needs n >= 3 and k >= 1")
    a = [f"a{i}" for i in range(1, n + 1)]
    b = [f"b{i}" for i in range(1, n + 1)]
    poles = ["a1"] + [f"a0_{j}" for j in range(1, k + 1)]
    edges = [(p, bi) for p in poles for bi in b]
    for i in range(2, n + 1):
        edges += [(f"a{i}", f"b{i - 1}"), (f"a{i}", f"b{i}")]
    lam = [("a1", ai) for ai in a[1:]] + [("a1", p) for p in poles[1:]]
    lam += [(b[i], b[i + 1]) for i in range(n - 1)]
    return _theta(a + b + poles[1:], edges, lam)


def hexagon() -> ThetaGraph:
    vs = [str(i) for i in range(1, 7)]
    edges = [(vs[i], vs[(i + 1) % 6]) for i in range(6)]
    theta = _theta(vs, edges, [("1", "3"), ("3", "5"), ("2", "4"), ("4", "6")])
    # Lambda is reconstructed, so guard the profile it was chosen for
    from .conditions import Condition, run_checks

    reports = run_checks(theta)
    if not all(reports[c].passed for c in (Condition.R1, Condition.R2, Condition.R3)) or reports[Condition.R4].passed:
        raise RuntimeError("hexagon fixture no longer has the R1-R3 pass / R4 fail profile")
    return theta


def r5_counterexample() -> ThetaGraph:
    vs = ["a", "a'", "c", "c'", "d", "d'"]
    square = [("c", "d"), ("d", "c'"), ("c'", "d'"), ("d'", "c")]
    edges = square + [("a", "c"), ("a", "c'"), ("a'", "d"), ("a'", "d'")]
    return _theta(vs, edges, [("a", "a'"), ("c", "c'"), ("d", "d'")])


def c4_diagonals() -> ThetaGraph:
    return _theta("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], [("a", "c"), ("b", "d")])


def lambda_path_on_edgeless(n: int = 4) -> ThetaGraph:
    if n < 2:
        raise BadParams("lambda_path_on_edgeless needs n >= 2")
    vs = [str(i) for i in range(1, n + 1)]
    return _theta(vs, [], list(zip(vs, vs[1:])))


_BUILDERS = {
    "gamma_n": (gamma_n, ("n",)),
    "delta_nk": (delta_nk, ("n", "k")),
    "hexagon": (hexagon, ()),
    "r5_counterexample": (r5_counterexample, ()),
    "c4_diagonals": (c4_diagonals, ()),
    "lambda_path_on_edgeless": (lambda_path_on_edgeless, ("n",)),
}


def make_family(spec: FamilySpec) -> ThetaGraph:
    builder, names = _BUILDERS[spec.name]
    extra = set(spec.params) - set(names)
    if extra:
        raise BadParams(f"{spec.name} takes no parameter(s) {sorted(extra)}")
    return builder(**spec.params)
