"""Compare the flow-based routines with the brute-force oracle on a small corpus.

    python3 scripts/corpus_run.py --per-size 100
"""

import argparse
import sys
import time
from collections import Counter
from dataclasses import dataclass

from flames import oracle
from flames.bubbles import largeness_check, max_bubble
from flames.flame import construct_large_flame, is_flame
from flames.generators import small_corpus
from flames.menger import local_connectivity


@dataclass
class CorpusConfig:
    max_exhaustive: int = 4
    random_sizes: tuple = (5, 6, 7)
    per_size: int = 100
    seed: int = 0


def run(cfg: CorpusConfig) -> Counter:
    tally = Counter()
    for D in small_corpus(cfg.max_exhaustive, cfg.random_sizes, cfg.per_size, cfg.seed):
        tally["instances"] += 1
        for v in D.targets:
            tally["kappa mismatch"] += local_connectivity(D, v) != oracle.brute_kappa(D, v)
            tally["bubble mismatch"] += max_bubble(D, v).vertices != oracle.brute_max_bubble(D, v)
        tally["flame mismatch"] += is_flame(D).ok != oracle.brute_flame(D)
        for e in sorted(D.edges):
            L = D.without_edges([e])
            tally["largeness mismatch"] += largeness_check(L, D, certificates=False).large != oracle.brute_largeness(L, D)
        E = construct_large_flame(D).E
        tally["construction rejected"] += not (oracle.brute_flame(E) and oracle.brute_largeness(E, D))
    return tally


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--per-size", type=int, default=CorpusConfig.per_size)
    p.add_argument("--seed", type=int, default=CorpusConfig.seed)
    a = p.parse_args(argv)
    t = time.perf_counter()
    tally = run(CorpusConfig(per_size=a.per_size, seed=a.seed))
    for key, value in tally.items():
        print(f"{key:>24}: {value}")
    print(f"{time.perf_counter() - t:.1f}s")
    return 0 if sum(v for k, v in tally.items() if k != "instances") == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
