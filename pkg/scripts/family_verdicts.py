"""Verdict table for the built-in families.

    python scripts/family_verdicts.py [--max-n 6]
"""

import argparse
import time
from dataclasses import dataclass

from visual_raag.conditions import run_checks
from visual_raag.decision import decide_finite_index_raag, decide_raag_system
from visual_raag.errors import NotTriangleFree
from visual_raag.families import c4_diagonals, delta_nk, gamma_n, hexagon, lambda_path_on_edgeless, r5_counterexample
from visual_raag.words import commuting_graph


@dataclass
class Config:
    max_n: int = 6
    max_k: int = 2


def fixtures(cfg: Config):
    for n in range(3, cfg.max_n + 1):
        yield f"gamma_n(n={n})", gamma_n(n)
    for n in range(3, min(cfg.max_n, 5) + 1):
        for k in range(1, cfg.max_k + 1):
            yield f"delta_nk(n={n},k={k})", delta_nk(n, k)
    yield "hexagon", hexagon()
    yield "r5_counterexample", r5_counterexample()
    yield "c4_diagonals", c4_diagonals()
    yield "lambda_path_on_edgeless(n=4)", lambda_path_on_edgeless(4)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--max-n", type=int, default=Config.max_n)
    parser.add_argument("--max-k", type=int, default=Config.max_k)
    args = parser.parse_args()
    cfg = Config(args.max_n, args.max_k)

    header = f"{'family':30} {'failed':24} {'RAAG system':12} {'finite index':13} {'index':>5} {'|Delta|':>7} {'sec':>6}"
    print(header)
    print("-" * len(header))
    for name, theta in fixtures(cfg):
        t0 = time.perf_counter()
        failed = [c.value for c, r in run_checks(theta).items() if r is not None and not r.passed]
        raag = decide_raag_system(theta)
        try:
            fi = decide_finite_index_raag(theta)
            fi_answer = fi.answer.value
            index = fi.index_report["omega_index"] if fi.index_report else "-"
        except NotTriangleFree:
            fi_answer, index = "n/a", "-"
        delta = commuting_graph(theta).graph
        dt = time.perf_counter() - t0
        print(
            f"{name:30} {','.join(failed) or '-':24} {raag.answer.value:12} {fi_answer:13} {index!s:>5} "
            f"{len(delta.vertices):>7} {dt:6.2f}"
        )


if __name__ == "__main__":
    main()
