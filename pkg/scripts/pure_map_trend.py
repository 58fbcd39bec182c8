"""Component statistics of uniform pure Hurwitz maps as n grows with ell = ratio * n.

Pure tuples come from the conditioned transposition walk, so the sampling
is exact even where rejection would never succeed.
"""
import argparse
import json
import math
import time

from plancherel_hurwitz.maps import ConditionedWalkSampler, map_statistics, random_tuple
from plancherel_hurwitz.samplers import make_rng


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 30, 40])
    ap.add_argument("--ratio", type=int, default=3)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for n in args.sizes:
        ell = args.ratio * n
        ell += ell % 2
        rng = make_rng(args.seed, n)
        start = time.perf_counter()
        walk = ConditionedWalkSampler(n, ell)
        pure = map_statistics([walk.sample(rng) for _ in range(args.count)], "pure").to_json()
        free = map_statistics([random_tuple(n, ell, rng) for _ in range(args.count)], "all").to_json()
        print(json.dumps({
            "n": n,
            "ell": ell,
            "n_over_log_n": n / math.log(n),
            "pure_isolated_mean": pure["isolated_vertices"]["mean"],
            "all_isolated_mean": free["isolated_vertices"]["mean"],
            "pure_largest_edge_fraction": pure["largest_component_edge_fraction"]["mean"],
            "pure_largest_vertices": pure["largest_component_vertices"]["mean"],
            "pure_components": pure["components"]["mean"],
            "seconds": round(time.perf_counter() - start, 2),
        }), flush=True)


if __name__ == "__main__":
    main()
