"""Write a seeded synthetic corpus (<root>/<cluster>/docs, refs) to disk.

    python3 scripts/make_synthetic_corpus.py out/ --clusters 5 --docs 10 --sents 8
"""

import argparse

from centroid_sum.corpus import write_cluster_dir
from centroid_sum.synthetic import SyntheticSpec, make_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out")
    ap.add_argument("--clusters", type=int, default=5)
    ap.add_argument("--docs", type=int, default=10)
    ap.add_argument("--sents", type=int, default=8)
    ap.add_argument("--vocab", type=int, default=3000)
    ap.add_argument("--refs", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    spec = SyntheticSpec(num_docs=args.docs, sents_per_doc=args.sents, vocab_size=args.vocab, num_refs=args.refs)
    for cluster in make_corpus(args.clusters, spec, args.seed):
        write_cluster_dir(cluster, args.out)
    print(f"wrote {args.clusters} clusters to {args.out}")


if __name__ == "__main__":
    main()
