"""Score every variant on a converted DUC2004 corpus against the published numbers,
then list the example-summary positions for cluster d30031.

    python3 scripts/run_duc2004.py data/duc2004 [--jobs 4]
"""

import argparse
import time

from centroid_sum.corpus import load_corpus
from centroid_sum.duc import (
    EXAMPLE_CLUSTER,
    EXAMPLE_POSITIONS,
    TARGETS,
    TOLERANCES,
    example_positions,
    position_overlap,
    run_variants,
)
from centroid_sum.rouge import DEFAULT_NS


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    clusters = load_corpus(args.corpus)
    t0 = time.perf_counter()
    reports = run_variants(clusters, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    width = max(len(n) for n in reports)
    print(f"{'Model':<{width}}  " + "  ".join(f"R-{n:<16}" for n in DEFAULT_NS))
    for name, rep in reports.items():
        cells = []
        for n, target, tol in zip(DEFAULT_NS, TARGETS[name], TOLERANCES):
            got = 100.0 * rep[n]
            mark = "ok" if abs(got - target) <= tol else "off"
            cells.append(f"{got:6.2f} ({target:5.2f} {mark:>3})")
        print(f"{name:<{width}}  " + "  ".join(cells))
    print(f"{len(reports)} variants x {len(clusters)} clusters in {elapsed:.1f} s")

    by_id = {c.cluster_id: c for c in clusters}
    if EXAMPLE_CLUSTER in by_id:
        for method, want in EXAMPLE_POSITIONS.items():
            got = example_positions(by_id[EXAMPLE_CLUSTER], method)
            print(f"{method:10s} {got}  overlap {position_overlap(got, want)}/{len(want)}  published {want}")


if __name__ == "__main__":
    main()
