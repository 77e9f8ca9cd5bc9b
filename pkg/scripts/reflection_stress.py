"""Random reflection sets: trim, then look for relations the theory forbids.

    python scripts/reflection_stress.py [--sets 1000] [--seed 0]
"""

import argparse
import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass

from visual_raag.decision import deletion_condition_test
from visual_raag.graphs import SimplicialGraph
from visual_raag.reflections import ReflectionSet, is_trimmed, normalize_reflection, reflection_raag_presentation, trim
from visual_raag.words import GroupWord


@dataclass
class Config:
    sets: int = 1000
    seed: int = 0
    max_vertices: int = 5
    max_members: int = 4
    max_conjugator: int = 4
    depth: int = 8
    harness_samples: int = 50
    harness_len: int = 5


def random_set(rng: random.Random, cfg: Config) -> ReflectionSet:
    names = [chr(ord("a") + i) for i in range(rng.randint(1, cfg.max_vertices))]
    g = SimplicialGraph.from_edges(names, [p for p in itertools.combinations(names, 2) if rng.random() < 0.5])
    members = []
    for _ in range(rng.randint(1, cfg.max_members)):
        w = tuple((rng.choice(names), rng.choice((1, -1))) for _ in range(rng.randint(0, cfg.max_conjugator)))
        members.append(normalize_reflection(GroupWord(w, g), (rng.choice(names), rng.choice((1, -1)))))
    return ReflectionSet.of(members)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for name, default in vars(Config()).items():
        parser.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    cfg = Config(**vars(parser.parse_args()))

    rng = random.Random(cfg.seed)
    stats = Counter()
    t0 = time.perf_counter()
    for _ in range(cfg.sets):
        T = random_set(rng, cfg)
        out = trim(T)
        stats["members in"] += len(T)
        stats["members out"] += len(out)
        stats["trim steps"] += len(out.log)
        stats["untrimmed"] += not is_trimmed(out)
        rep = deletion_condition_test(out.words(), cfg.harness_samples, cfg.harness_len, seed=rng.randrange(1 << 30))
        stats["deletion counterexamples"] += len(rep.counterexamples)
        stats["non-geodesic samples"] += rep.non_geodesic
        try:
            pres = reflection_raag_presentation(out, cfg.depth)
            stats["truncated kernel searches"] += pres.truncated
            stats["Delta edges"] += len(pres.delta.graph.edges)
        except RuntimeError:
            stats["kernel witnesses"] += 1
    for key, value in stats.items():
        print(f"{key:28} {value}")
    print(f"{cfg.sets} sets in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
