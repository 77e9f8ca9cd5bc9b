"""Verdicts for visual RAAG systems and the kernel-search oracle.

The kernel search looks for a nontrivial element of the kernel of the map
A_Delta -> ambient group.  Rather than walking all words of length L it
meets in the middle: every geodesic of length L splits as u v with
|u| = ceil(L/2), |v| = floor(L/2), and u v lies in the kernel iff the image
of u is the inverse of the image of v.  Elements of each half-length are
bucketed by the normal form of their image, so only matching pairs are
combined.  Among all kernel elements of the least length the one with the
lexicographically least canonical form is returned, which is exactly the
first hit of a plain length-ordered enumeration.
"""

from __future__ import annotations

import enum
import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .conditions import Condition, ConditionReport, run_checks
from .config import Caps
from .errors import AssignmentTrivialImage, NotTriangleFree
from .graphs import SimplicialGraph, ThetaGraph, build_theta, graph_predicates, is_forest
from .words import (
    CommutingGraph,
    GroupWord,
    alphabet,
    canonical_codes,
    commuting_graph,
    inverse_codes,
    normal_form_codes,
    reduce_codes,
)

MANY_COMPONENTS_NOTE = (
    "no sufficient criterion is known for three or more Lambda-components; "
    "further necessary conditions may exist"
)


class Answer(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass
class Verdict:
    answer: Answer
    basis: list[ConditionReport] = field(default_factory=list)
    certificate: dict | None = None
    index_report: dict | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.answer is Answer.NO and self.certificate is None:
            raise ValueError("a No verdict needs a certificate")

    def to_json(self) -> dict:
        return {
            "answer": self.answer.value,
            "conditions": [r.to_json() for r in self.basis],
            "certificate": self.certificate,
            "index_report": self.index_report,
            "notes": list(self.notes),
        }


# --- kernel search --------------------------------------------------------


@dataclass(frozen=True)
class KernelSearch:
    witness: GroupWord | None
    depth: int  # every length <= depth has been fully searched
    truncated: bool
    explored: int


def kernel_search_report(
    delta: SimplicialGraph,
    assignment: Mapping[str, GroupWord],
    ambient: SimplicialGraph,
    involutive: bool,
    max_len: int,
    budget: int = Caps().kernel_budget,
) -> KernelSearch:
    d_alph = alphabet(delta)
    a_alph = alphabet(ambient)
    images = []
    for name in d_alph.names:
        word = assignment[name]
        codes = reduce_codes(a_alph.encode(word.letters), a_alph.commute, involutive)
        if not codes:
            raise AssignmentTrivialImage(f"generator {name} maps to the identity")
        images.append(codes)
    # image of code 2i is word i, of code 2i+1 its inverse
    letter_img = []
    for codes in images:
        letter_img.append(codes)
        letter_img.append(inverse_codes(codes, involutive))

    d_comm, a_comm = d_alph.commute, a_alph.commute
    levels: list[dict[tuple, tuple]] = [{(): ()}]
    by_image: list[dict[tuple, list[tuple]]] = [{(): [()]}]
    explored = 1

    def grow() -> bool:
        nonlocal explored
        nxt: dict[tuple, tuple] = {}
        n = len(levels)
        for w, img in levels[-1].items():
            for x in range(2 * len(d_alph.names)):
                red = reduce_codes(list(w) + [x], d_comm, False)
                if len(red) != n:
                    continue
                key = canonical_codes(red, d_comm)
                if key in nxt:
                    continue
                nxt[key] = normal_form_codes(list(img) + letter_img[x], a_comm, involutive)
                explored += 1
                if explored > budget:
                    return False
        buckets: dict[tuple, list[tuple]] = defaultdict(list)
        for key, img in nxt.items():
            buckets[img].append(key)
        levels.append(nxt)
        by_image.append(buckets)
        return True

    for length in range(1, max_len + 1):
        h1 = (length + 1) // 2
        h2 = length - h1
        while len(levels) <= h1:
            if not grow():
                return KernelSearch(None, length - 1, True, explored)
        best = None
        for u, img in levels[h1].items():
            target = canonical_codes(inverse_codes(img, involutive), a_comm)
            for v in by_image[h2].get(target, ()):
                red = reduce_codes(list(u) + list(v), d_comm, False)
                if len(red) != length:
                    continue
                cand = canonical_codes(red, d_comm)
                if best is None or cand < best:
                    best = cand
        if best is not None:
            return KernelSearch(GroupWord.from_codes(best, delta), length, False, explored)
    return KernelSearch(None, max_len, False, explored)


def kernel_search(
    delta: SimplicialGraph,
    assignment: Mapping[str, GroupWord],
    ambient: SimplicialGraph,
    involutive: bool,
    max_len: int,
) -> GroupWord | None:
    return kernel_search_report(delta, assignment, ambient, involutive, max_len).witness


def evaluate(word: GroupWord, assignment: Mapping[str, GroupWord], ambient: SimplicialGraph, involutive: bool):
    """Image of a word over Delta under the generator assignment."""
    out = GroupWord.identity(ambient, involutive)
    for g, s in word.letters:
        out = out * (assignment[g] if s > 0 else assignment[g].inverse())
    return out


def _search_commuting_graph(cg: CommutingGraph, ambient, involutive, caps: Caps) -> KernelSearch:
    return kernel_search_report(cg.graph, cg.assignment, ambient, involutive, caps.kernel_depth, caps.kernel_budget)


def _kernel_certificate(theta: ThetaGraph, caps: Caps) -> dict:
    cg = commuting_graph(theta)
    result = _search_commuting_graph(cg, theta.gamma, True, caps)
    cert = {"kernel_witness": None, "kernel_depth": result.depth, "kernel_truncated": result.truncated}
    w = result.witness
    if w is not None:
        # both facts are checked before the witness is published
        if w.is_trivial() or not evaluate(w, cg.assignment, theta.gamma, True).is_trivial():
            raise RuntimeError(f"kernel search produced an invalid witness {w}")
        cert["kernel_witness"] = str(w)
        cert["kernel_witness_length"] = len(w)
    return cert


# --- verdicts -------------------------------------------------------------


def _first_failure(reports: Sequence[ConditionReport]) -> ConditionReport | None:
    return next((r for r in reports if not r.passed), None)


def _no(basis, failed: ConditionReport, theta: ThetaGraph, caps: Caps, notes=()) -> Verdict:
    cert = {"failed_condition": failed.condition.value, "witness": failed.witness}
    cert.update(_kernel_certificate(theta, caps))
    return Verdict(Answer.NO, basis, cert, None, list(notes))


def decide_raag_system(theta: ThetaGraph, caps: Caps = Caps()) -> Verdict:
    k = len(theta.components)
    if k <= 2:
        which = [Condition.R1, Condition.R2, Condition.R3, Condition.R4]
    else:
        which = [Condition.R1, Condition.R2, Condition.R3, Condition.R4, Condition.R5, Condition.TRIANGLE]
    reports = run_checks(theta, which, caps)
    basis = [r for r in reports.values() if r is not None]
    failed = _first_failure(basis)
    truncated = any(r.truncated for r in basis)

    if k <= 2:
        if failed is not None:
            return _no(basis, failed, theta, caps)
        if truncated:
            return Verdict(Answer.UNKNOWN, basis, notes=["two-component cycle search truncated; raise the cycle caps"])
        return Verdict(Answer.YES, basis)

    if failed is not None and failed.condition is not Condition.TRIANGLE:
        return _no(basis, failed, theta, caps)
    if failed is not None and graph_predicates(theta.gamma).triangle_free:
        return _no(basis, failed, theta, caps, ["triangle-free graph contains the triangle-forcing configuration"])
    notes = [MANY_COMPONENTS_NOTE]
    if truncated:
        notes.append("two-component cycle search truncated")
    return Verdict(Answer.UNKNOWN, basis, notes=notes)


def _cone_free(theta: ThetaGraph, cones) -> ThetaGraph:
    keep = [v for v in theta.gamma.vertices if v not in cones]
    return build_theta(theta.gamma.subgraph(keep), theta.lambda_edges)


def decide_finite_index_raag(theta: ThetaGraph, caps: Caps = Caps()) -> Verdict:
    from .completion import build_completion, index_report

    preds = graph_predicates(theta.gamma)
    if not preds.triangle_free:
        raise NotTriangleFree("finite-index decision needs a triangle-free graph")
    k = len(theta.components)
    which = [Condition.R1, Condition.R2, Condition.R3, Condition.R4, Condition.F1, Condition.F2]
    reports = run_checks(theta, which, caps)
    basis = [r for r in reports.values() if r is not None]
    failed = _first_failure(basis)
    if failed is not None:
        return _no(basis, failed, theta, caps)
    if k > 2:
        cert = {"failed_condition": "components", "witness": {"components": k, "maximum": 2}}
        return Verdict(Answer.NO, basis, cert, notes=["finite-index RAAG systems have at most two Lambda-components"])
    if any(r.truncated for r in basis):
        return Verdict(Answer.UNKNOWN, basis, notes=["two-component cycle search truncated; raise the cycle caps"])

    cones = preds.cone_vertices
    expected = 2 ** (k + len(cones))
    # a cone vertex splits off a Z/2 direct factor that the Lambda-edges never see
    result = build_completion(_cone_free(theta, cones), caps.cell_cap)
    report = {
        "expected_index": expected,
        "omega_index": None,
        "omega_vertices": len(result.complex.vertex_ids()),
        "omega_saturated": result.saturated,
        "cone_vertices": sorted(cones),
        "components": k,
        "virtually_free": is_forest(theta.gamma),
    }
    notes = []
    if result.saturated:
        idx = index_report(result.complex, result.gamma)
        if idx.index is not None:
            report["omega_index"] = idx.index * 2 ** len(cones)
    else:
        notes.append("completion exceeded the cell cap")
    if report["omega_index"] != expected:
        notes.append("completion index disagrees with the expected index")
    if not report["virtually_free"] and expected != 4:
        notes.append("index should be four when the Coxeter group is not virtually free")
    return Verdict(Answer.YES, basis, None, report, notes)


# --- deletion condition harness ---------------------------------------------


@dataclass(frozen=True)
class DeletionReport:
    samples: int
    non_geodesic: int
    counterexamples: list  # list of words, each a list of (generator index, sign)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def deletion_condition_test(
    generators: Sequence[GroupWord],
    samples: int = 500,
    max_word_len: int = 6,
    seed: int = 0,
) -> DeletionReport:
    """Falsification harness for the deletion condition over ``generators``.

    Words are drawn over S and S^-1.  A word is non-geodesic when its element
    appears in the breadth-first ball of strictly smaller radius.
    """
    if not generators:
        return DeletionReport(0, 0, [])
    ambient = generators[0].ambient
    involutive = generators[0].involutive
    alph = alphabet(ambient)
    comm = alph.commute
    letters = [(i, s) for i in range(len(generators)) for s in (1, -1)]
    img = {}
    for i, g in enumerate(generators):
        codes = reduce_codes(alph.encode(g.letters), comm, involutive)
        img[(i, 1)] = codes
        img[(i, -1)] = inverse_codes(codes, involutive)

    def element(word) -> tuple:
        codes = []
        for letter in word:
            codes.extend(img[letter])
        return normal_form_codes(codes, comm, involutive)

    # ball[e] = S-length of e, for S-length < max_word_len
    ball = {(): 0}
    frontier = [()]
    for r in range(1, max_word_len):
        nxt = []
        for e in frontier:
            for letter in letters:
                f = normal_form_codes(list(e) + img[letter], comm, involutive)
                if f not in ball:
                    ball[f] = r
                    nxt.append(f)
        frontier = nxt

    rng = random.Random(seed)
    non_geo = 0
    bad = []
    for _ in range(samples):
        n = rng.randint(2, max_word_len)
        word = [rng.choice(letters) for _ in range(n)]
        target = element(word)
        if ball.get(target, max_word_len) >= n:
            continue
        non_geo += 1
        if not any(
            element(word[:i] + word[i + 1 : j] + word[j + 1 :]) == target
            for i in range(n)
            for j in range(i + 1, n)
        ):
            bad.append(word)
    return DeletionReport(samples, non_geo, bad)
