"""Regenerate tests/data/golden: a small corpus, two models' summaries and the
expected evaluation table computed with the brute-force ROUGE oracle.

The oracle tokenizes on its own (lowercase, strip periods, split on spaces) and
does not stem. That is only equivalent because every synthetic token is a fixed
point of the stemmer, which is asserted below.
"""

import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402
from centroid_sum.corpus import atomic_write, write_cluster_dir  # noqa: E402
from centroid_sum.porter import porter_stem  # noqa: E402
from centroid_sum.summarizer import SummarizerConfig, summarize  # noqa: E402
from centroid_sum.synthetic import SyntheticSpec, make_corpus  # noqa: E402

OUT = ROOT / "tests" / "data" / "golden"
MODELS = {
    "ranked": SummarizerConfig(variant="ranked"),
    "global_nbest": SummarizerConfig(preselection="n_best", n=2),
}
NS = (1, 2, 4)
LIMIT = 100


def toks(text):
    words = text.lower().replace(".", " ").split()[:LIMIT]
    assert all(porter_stem(w) == w for w in words), "token not a stemmer fixed point"
    return words


def main():
    spec = SyntheticSpec(num_docs=4, sents_per_doc=6, vocab_size=60, num_refs=3, ref_words=60)
    corpus = make_corpus(4, spec, seed=7)
    for c in corpus:
        write_cluster_dir(c, OUT / "corpus")
    rows = {}
    records = ["model\tcluster\tn\trecall"]
    for name, cfg in MODELS.items():
        per_n = {n: [] for n in NS}
        for c in corpus:
            text = summarize(c, cfg).text() + "\n"
            atomic_write(OUT / "summaries" / name / f"{c.cluster_id}.txt", text)
            refs = [toks(r) for r in c.references]
            for n in NS:
                value = oracles.rouge_recall_exact(toks(text), refs, n)
                per_n[n].append(value)
                records.append(f"{name}\t{c.cluster_id}\t{n}\t{value.numerator}/{value.denominator}")
        rows[name] = {n: sum(v, Fraction(0)) / len(v) for n, v in per_n.items()}
    width = max(len("Model"), *(len(n) for n in rows))
    lines = [("Model".ljust(width) + "".join(f"  R-{n:<5}" for n in NS)).rstrip()]
    for name, means in rows.items():
        lines.append((name.ljust(width) + "".join(f"  {float(100 * means[n]):<7.2f}" for n in NS)).rstrip())
    atomic_write(OUT / "table.txt", "\n".join(lines) + "\n")
    atomic_write(OUT / "recalls.tsv", "\n".join(records) + "\n")
    print((OUT / "table.txt").read_text())


if __name__ == "__main__":
    main()
