"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines; they are
also printed unconditionally via ``capsys.disabled()``.
"""

import itertools
import random
import time

import networkx as nx
import pytest

from tests.oracles import Piling, TitsRep, cayley_distances, graph_classes
from visual_raag.completion import build_completion, index_report, parity_check
from visual_raag.conditions import Condition, run_checks
from visual_raag.decision import (
    Answer,
    decide_finite_index_raag,
    decide_raag_system,
    deletion_condition_test,
    evaluate,
    kernel_search_report,
)
from visual_raag.errors import NotTriangleFree
from visual_raag.families import c4_diagonals, delta_nk, gamma_n, hexagon, lambda_path_on_edgeless, r5_counterexample
from visual_raag.graphs import SimplicialGraph, build_theta
from visual_raag.reflections import (
    ReflectionSet,
    evaluate_expr,
    is_trimmed,
    normalize_reflection,
    reflection_raag_presentation,
    trim,
)
from visual_raag.words import GroupWord, alphabet, commuting_graph, equals, reduce, reduce_codes

CELL_CAP = 50_000


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail, started):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - started:.1f}s) {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


def test_criterion_1_gamma_n(report):
    t0 = time.perf_counter()
    bad = []
    for n in range(3, 7):
        theta = gamma_n(n)
        raag = decide_raag_system(theta).answer
        fi = decide_finite_index_raag(theta)
        delta = commuting_graph(theta).graph.to_networkx()
        ok = (
            raag is Answer.YES
            and fi.answer is Answer.YES
            and fi.index_report["omega_index"] == fi.index_report["expected_index"] == 4
            and nx.is_isomorphic(delta, nx.cycle_graph(2 * n))
        )
        if not ok:
            bad.append(n)
    report(1, not bad, f"gamma_n n=3..6; failing n: {bad}", t0)


def test_criterion_2_delta_nk(report):
    t0 = time.perf_counter()
    bad = []
    for n, k in itertools.product((3, 4), (1, 2)):
        fi = decide_finite_index_raag(delta_nk(n, k))
        if not (fi.answer is Answer.YES and fi.index_report["omega_index"] == 4):
            bad.append((n, k))
    report(2, not bad, f"delta_nk n=3..4 k=1..2; failing: {bad}", t0)


def test_criterion_3_hexagon(report):
    t0 = time.perf_counter()
    theta = hexagon()
    checks = run_checks(theta)
    profile_ok = all(checks[c].passed for c in (Condition.R1, Condition.R2, Condition.R3)) and not checks[
        Condition.R4
    ].passed
    cg = commuting_graph(theta)
    rep = kernel_search_report(cg.graph, cg.assignment, theta.gamma, True, 8)
    w = rep.witness
    witness_ok = False
    if w is not None:
        image = evaluate(w, cg.assignment, theta.gamma, True)
        engine_ok = not w.is_trivial() and image.is_trivial()
        # second opinion from the matrix and piling oracles
        tits = TitsRep(theta.gamma.vertices, theta.gamma.sorted_edges())
        pile = Piling(cg.graph.vertices, cg.graph.sorted_edges())
        oracle_ok = tits.element(image.letters) == tits.identity() and pile.element(w.letters) != pile.identity()
        witness_ok = engine_ok and oracle_ok
    report(3, profile_ok and witness_ok, f"R1-R3 pass, R4 fails: {profile_ok}; witness {w} valid: {witness_ok}", t0)


def test_criterion_4_r5(report):
    t0 = time.perf_counter()
    theta = r5_counterexample()
    checks = run_checks(theta)
    profile_ok = all(checks[c].passed for c in (Condition.R1, Condition.R2, Condition.R3, Condition.R4))
    profile_ok = profile_ok and not checks[Condition.R5].passed
    verdict = decide_raag_system(theta).answer
    report(4, profile_ok and verdict is Answer.NO, f"profile ok: {profile_ok}; verdict {verdict.value}", t0)


def test_criterion_5_completion(report):
    t0 = time.perf_counter()
    problems = []
    for theta, expected in ((lambda_path_on_edgeless(4), 2), (c4_diagonals(), 4), (gamma_n(3), 4)):
        res = build_completion(theta, CELL_CAP)
        if not res.saturated or res.complex.cell_count() > CELL_CAP:
            problems.append("unsaturated")
            continue
        rep = index_report(res.complex, theta.gamma, res.saturated)
        if rep.vertex_count != expected or not rep.full_valence or rep.index != expected:
            problems.append(f"vertices {rep.vertex_count} != {expected}")
        form = res.complex.canonical_form()
        for seed in range(10):
            if build_completion(theta, CELL_CAP, seed=seed).complex.canonical_form() != form:
                problems.append(f"seed {seed} differs")
    report(5, not problems, f"|V(Omega)| 2/4/4, full valence, 10 fold orders isomorphic; problems: {problems}", t0)


def test_criterion_6_geodesic_oracle(report):
    t0 = time.perf_counter()
    words = mismatches = 0
    for names, edges in graph_classes(4):
        g = SimplicialGraph.from_edges(names, edges)
        alph = alphabet(g)
        for involutive in (True, False):
            dist, rep, gens, step = cayley_distances(names, edges, involutive, 6)
            # walk every word of length <= 6, carrying the oracle element along; the
            # reduction core is checked on all of them, the public reduce() up to length 4
            stack = [((), (), rep.identity())]
            while stack:
                word, codes, state = stack.pop()
                words += 1
                if len(reduce_codes(list(codes), alph.commute, involutive)) != dist[state]:
                    mismatches += 1
                if len(word) <= 4 and len(reduce(GroupWord(word, g, involutive))) != dist[state]:
                    mismatches += 1
                if len(word) < 6:
                    for gen in gens:
                        letter = (gen, 1) if involutive else gen
                        stack.append((word + (letter,), codes + tuple(alph.encode((letter,))), step(state, gen)))
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed <= 60
    report(6, ok, f"{words} words over all graphs on <=4 vertices (up to isomorphism), {mismatches} mismatches", t0)


def test_criterion_7_parity(report):
    t0 = time.perf_counter()
    bad = []
    fixtures = [gamma_n(n) for n in range(3, 7)] + [delta_nk(n, k) for n in (3, 4) for k in (1, 2)] + [c4_diagonals()]
    for theta in fixtures:
        assert decide_finite_index_raag(theta).answer is Answer.YES and len(theta.components) == 2
        par = parity_check(theta)
        res = build_completion(theta, CELL_CAP)
        idx = index_report(res.complex, theta.gamma, res.saturated).index
        if not (par["kills_lambda_edges"] and par["image_order"] == idx):
            bad.append(sorted(theta.gamma.vertices))
    report(7, not bad, f"{len(fixtures)} two-component Yes fixtures; failing: {bad}", t0)


def random_reflection_set(rng):
    n = rng.randint(1, 5)
    names = [chr(ord("a") + i) for i in range(n)]
    g = SimplicialGraph.from_edges(names, [p for p in itertools.combinations(names, 2) if rng.random() < 0.5])
    members = []
    for _ in range(rng.randint(1, 4)):
        w = tuple((rng.choice(names), rng.choice((1, -1))) for _ in range(rng.randint(0, 4)))
        members.append(normalize_reflection(GroupWord(w, g), (rng.choice(names), rng.choice((1, -1)))))
    return ReflectionSet.of(members)


def test_criterion_8_reflections(report):
    t0 = time.perf_counter()
    F2 = SimplicialGraph.from_edges("ab", [])
    a = normalize_reflection(GroupWord.identity(F2), ("a", 1))
    aba = normalize_reflection(GroupWord.parse("a", F2), ("b", 1))
    example = [str(r) for r in trim(ReflectionSet.of([a, aba])).members]
    example_ok = example == ["w: ; s: a", "w: ; s: b"]
    rng = random.Random(20261018)
    counts = {"untrimmed": 0, "provenance": 0, "recovery": 0, "deletion": 0, "kernel": 0, "truncated": 0}
    for _ in range(1000):
        T = random_reflection_set(rng)
        out = trim(T)
        g = T.ambient
        counts["untrimmed"] += not is_trimmed(out)
        counts["provenance"] += not all(
            equals(evaluate_expr(e, T.originals, g), m.word) for m, e in zip(out.members, out.provenance)
        )
        counts["recovery"] += not all(
            equals(evaluate_expr(e, out.members, g), o.word) for o, e in zip(T.originals, out.recovery)
        )
        counts["deletion"] += not deletion_condition_test(out.words(), samples=50, max_word_len=5).ok
        try:
            pres = reflection_raag_presentation(out, depth=8)
            counts["truncated"] += pres.truncated
        except RuntimeError:
            counts["kernel"] += 1
    violations = sum(v for k, v in counts.items() if k != "truncated")
    detail = f"trim example {example}; 1000 random sets, violations {counts}"
    report(8, example_ok and violations == 0, detail, t0)


def _fixture_suite():
    star = SimplicialGraph.from_edges("cxyz", [("c", "x"), ("c", "y"), ("c", "z")])
    return [
        *(gamma_n(n) for n in range(3, 7)),
        *(delta_nk(n, k) for n in (3, 4) for k in (1, 2)),
        hexagon(),
        r5_counterexample(),
        c4_diagonals(),
        lambda_path_on_edgeless(4),
        build_theta(SimplicialGraph.from_edges("123456", []), [("1", "2"), ("3", "4"), ("5", "6")]),
        build_theta(star, [("x", "y"), ("y", "z")]),
        build_theta(c4_diagonals().gamma, [("a", "c")]),
    ]


def _verdicts(theta):
    raag = decide_raag_system(theta)
    checks = {c.value: (None if r is None else r.passed) for c, r in run_checks(theta).items()}
    try:
        fi = decide_finite_index_raag(theta)
        fi_key = (fi.answer.value, None if fi.index_report is None else fi.index_report["omega_index"])
    except NotTriangleFree:
        fi_key = "not triangle-free"
    failed = raag.certificate["failed_condition"] if raag.certificate else None
    return raag.answer.value, failed, checks, fi_key


def test_criterion_9_metamorphic(report):
    t0 = time.perf_counter()
    changed = []
    suite = _fixture_suite()
    for k, theta in enumerate(suite):
        base = _verdicts(theta)
        flipped = build_theta(theta.gamma, [(b, a) for a, b in theta.lambda_edges])
        variants = [flipped]
        for seed in range(3):
            names = list(theta.gamma.vertices)
            shuffled = names[:]
            random.Random(seed).shuffle(shuffled)
            variants.append(theta.relabel({x: f"u{y}" for x, y in zip(names, shuffled)}))
        if any(_verdicts(v) != base for v in variants):
            changed.append(k)
    report(9, not changed, f"{len(suite)} fixtures x (flip + 3 renamings); changed: {changed}", t0)
