"""Shortest kernel element for the hexagon, and how the search scales with depth.

    python scripts/hexagon_kernel.py [--max-depth 8]
"""

import argparse
import time

from visual_raag.decision import evaluate, kernel_search_report
from visual_raag.families import hexagon
from visual_raag.words import commuting_graph


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--max-depth", type=int, default=8)
    parser.add_argument("--budget", type=int, default=200_000)
    args = parser.parse_args()

    theta = hexagon()
    cg = commuting_graph(theta)
    for name, word in cg.generators:
        print(f"{name:6} -> {word}")
    print(f"{'depth':>5} {'explored':>9} {'truncated':>9} {'sec':>6}  witness")
    for depth in range(2, args.max_depth + 1, 2):
        t0 = time.perf_counter()
        rep = kernel_search_report(cg.graph, cg.assignment, theta.gamma, True, depth, args.budget)
        dt = time.perf_counter() - t0
        print(f"{depth:>5} {rep.explored:>9} {rep.truncated!s:>9} {dt:6.2f}  {rep.witness or '-'}")
        if rep.witness is not None:
            image = evaluate(rep.witness, cg.assignment, theta.gamma, True)
            print(f"image word in W_Gamma: {image}")
            print(f"reduces to the identity: {image.is_trivial()}")
            break


if __name__ == "__main__":
    main()
