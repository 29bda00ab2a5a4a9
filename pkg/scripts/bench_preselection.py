"""Wall-clock of `summarize` on one 100-document x 50-sentence synthetic cluster,
global variant with and without n_best preselection.

    python3 scripts/bench_preselection.py [--repeats 5] [--profile]
"""

import argparse
import cProfile
import pstats
import tempfile
import time
from pathlib import Path

from centroid_sum.cli import main as cli_main
from centroid_sum.corpus import write_cluster_dir
from centroid_sum.summarizer import SummarizerConfig, preselect, prepare_cluster
from centroid_sum.synthetic import SyntheticSpec, make_corpus
from centroid_sum.vectors import build_centroid_and_vectors

SPEC = SyntheticSpec(num_docs=100, sents_per_doc=50, num_refs=0)
RUNS = {
    "none": ["--variant", "global"],
    "n_best": ["--variant", "global", "--preselect", "n_best", "--n", "2"],
}


def write_bench_corpus(root: Path) -> Path:
    cluster = make_corpus(1, SPEC, seed=0)[0]
    return write_cluster_dir(cluster, root)


def time_run(cluster_dir: Path, out: Path, flags, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        assert cli_main(["summarize", str(cluster_dir), "-o", str(out), *flags]) == 0
        best = min(best, time.perf_counter() - t0)
    return best


def peak_pool(cluster_dir: Path) -> int:
    from centroid_sum.corpus import load_cluster_dir

    prepared = prepare_cluster(load_cluster_dir(cluster_dir).documents)
    cfg = SummarizerConfig(preselection="n_best", n=2)
    model, vectors = build_centroid_and_vectors(prepared.sentences, cfg.v, prepared.num_docs)
    return len(preselect(prepared, model, cfg, vectors))


def measure(repeats: int = 3) -> dict:
    with tempfile.TemporaryDirectory() as tmp:
        cluster_dir = write_bench_corpus(Path(tmp) / "corpus")
        times = {name: time_run(cluster_dir, Path(tmp) / name, flags, repeats) for name, flags in RUNS.items()}
        return {"times": times, "ratio": times["n_best"] / times["none"], "pool": peak_pool(cluster_dir)}


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--profile", action="store_true")
    args = ap.parse_args()
    res = measure(args.repeats)
    for name, t in res["times"].items():
        print(f"{name:8s} {t:.3f} s")
    print(f"ratio    {res['ratio']:.3f}  (target <= 0.25)")
    print(f"pool     {res['pool']}  (target <= 200)")
    if args.profile:
        with tempfile.TemporaryDirectory() as tmp:
            cluster_dir = write_bench_corpus(Path(tmp) / "corpus")
            for name, flags in RUNS.items():
                prof = cProfile.Profile()
                prof.runcall(cli_main, ["summarize", str(cluster_dir), "-o", str(Path(tmp) / name), *flags])
                print(f"--- {name}")
                pstats.Stats(prof).sort_stats("tottime").print_stats(12)
