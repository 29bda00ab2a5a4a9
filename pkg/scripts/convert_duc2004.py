"""Convert the NIST DUC2004 Task 2 distribution into cluster directories.

    python3 scripts/convert_duc2004.py \
        duc2004_testdata/tasks1and2/duc2004_tasks1and2_docs/docs \
        duc2004_results/ROUGE/eval/models/2 \
        data/duc2004
"""

import argparse

from centroid_sum.duc import convert_duc2004


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("docs_root", help="directory holding d30001t/, d30002t/, ...")
    ap.add_argument("models_dir", help="directory holding D30001.M.100.T.A, ...")
    ap.add_argument("out", help="output corpus root")
    args = ap.parse_args()
    clusters = convert_duc2004(args.docs_root, args.models_dir, args.out)
    refs = sum(len(c.references) for c in clusters)
    print(f"wrote {len(clusters)} clusters ({refs} reference summaries) to {args.out}")


if __name__ == "__main__":
    main()
