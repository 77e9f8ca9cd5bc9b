"""Exhaustive check of word reduction against Cayley-graph distances.

    python scripts/geodesic_oracle.py [--max-vertices 4] [--max-len 6]

Run from the repository root (the oracles live in tests/oracles.py).
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from tests.oracles import cayley_distances, graph_classes  # noqa: E402
from visual_raag.graphs import SimplicialGraph  # noqa: E402
from visual_raag.words import alphabet, reduce_codes  # noqa: E402


def check_graph(names, edges, involutive, max_len):
    alph = alphabet(SimplicialGraph.from_edges(names, edges))
    dist, rep, gens, step = cayley_distances(names, edges, involutive, max_len)
    words = bad = 0
    stack = [((), rep.identity())]
    while stack:
        codes, state = stack.pop()
        words += 1
        bad += len(reduce_codes(list(codes), alph.commute, involutive)) != dist[state]
        if len(codes) < max_len:
            for gen in gens:
                letter = (gen, 1) if involutive else gen
                stack.append((codes + tuple(alph.encode((letter,))), step(state, gen)))
    return words, bad


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--max-vertices", type=int, default=4)
    parser.add_argument("--max-len", type=int, default=6)
    args = parser.parse_args()

    total = mismatches = 0
    for involutive, label in ((True, "RACG"), (False, "RAAG")):
        t0 = time.perf_counter()
        words = bad = 0
        classes = graph_classes(args.max_vertices)
        for names, edges in classes:
            w, b = check_graph(names, edges, involutive, args.max_len)
            words += w
            bad += b
        total += words
        mismatches += bad
        print(f"{label}: {len(classes)} graphs, {words} words, {bad} mismatches, {time.perf_counter() - t0:.1f}s")
    print(f"total: {total} words, {mismatches} mismatches")
    sys.exit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
