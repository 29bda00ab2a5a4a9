"""DUC2004 Task 2 helpers: raw-data conversion, the evaluated variants and their target scores.

The NIST data is licensed and not bundled. :func:`convert_duc2004` turns the
distributed layout (``docs/d30001t/APW19981016.0240`` plus model summaries
named ``D30001.M.100.T.A``) into the cluster-directory format read by
:func:`centroid_sum.corpus.load_corpus`.
"""

from __future__ import annotations

import os
import re
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .corpus import Cluster, CorpusError, _byte_key, strip_duc_sgml, write_cluster_dir
from .rouge import DEFAULT_NS, CorpusReport, evaluate_corpus
from .summarizer import SummarizerConfig, as_prepared, summarize
from .text import RawDocument

_MODEL_NAME = re.compile(r"^(D\d+)\.M\.100\.T\.([A-Z])$", re.I)

# r=0.6, v=0.1 and the default N per preselection method throughout
VARIANTS: dict[str, SummarizerConfig] = {
    "Centroid": SummarizerConfig(variant="ranked"),
    "Centroid + N-first": SummarizerConfig(variant="ranked", preselection="n_first"),
    "Centroid + N-best": SummarizerConfig(variant="ranked", preselection="n_best"),
    "Centroid + new-tf-idf": SummarizerConfig(variant="ranked", preselection="new_tfidf"),
    "Centroid + G": SummarizerConfig(variant="global"),
    "Centroid + G + N-first": SummarizerConfig(variant="global", preselection="n_first"),
    "Centroid + G + N-best": SummarizerConfig(variant="global", preselection="n_best"),
    "Centroid + G + new-tf-idf": SummarizerConfig(variant="global", preselection="new_tfidf"),
    "Centroid - R": SummarizerConfig(variant="ranked", redundancy_filter=False),
    "Centroid + G - R": SummarizerConfig(variant="global", redundancy_filter=False),
}

# published R-1, R-2, R-4 recall in percent
TARGETS: dict[str, tuple[float, float, float]] = {
    "Centroid": (37.91, 9.53, 1.56),
    "Centroid + N-first": (38.04, 9.56, 1.56),
    "Centroid + N-best": (37.86, 9.67, 1.67),
    "Centroid + new-tf-idf": (38.27, 9.64, 1.54),
    "Centroid + G": (38.55, 9.73, 1.53),
    "Centroid + G + N-first": (38.85, 9.86, 1.62),
    "Centroid + G + N-best": (38.86, 9.77, 1.53),
    "Centroid + G + new-tf-idf": (39.11, 9.81, 1.58),
    "Centroid - R": (35.54, 8.73, 1.42),
    "Centroid + G - R": (38.58, 9.73, 1.53),
}
TOLERANCES = (1.0, 0.5, 0.3)

# positions of the non-truncated sentences of the example summaries for d30031
EXAMPLE_CLUSTER = "d30031"
EXAMPLE_POSITIONS: dict[str, list[tuple[int, int]]] = {
    "n_first": [(0, 0), (1, 0), (1, 5), (8, 5)],
    "n_best": [(0, 0), (0, 20), (2, 19), (8, 5)],
    "new_tfidf": [(0, 0), (0, 20), (1, 12), (5, 0)],
}


def cluster_id_for(dirname: str) -> str:
    # d30001t -> d30001
    return dirname.lower().rstrip("t") if re.fullmatch(r"d\d+t", dirname, re.I) else dirname.lower()


def read_duc_clusters(docs_root: str | os.PathLike, models_dir: str | os.PathLike) -> list[Cluster]:
    docs_root, models_dir = Path(docs_root), Path(models_dir)
    if not docs_root.is_dir():
        raise CorpusError(f"{docs_root}: not a directory")
    if not models_dir.is_dir():
        raise CorpusError(f"{models_dir}: not a directory")
    models: dict[str, list[Path]] = {}
    for f in sorted(models_dir.iterdir(), key=_byte_key):
        m = _MODEL_NAME.match(f.name)
        if m:
            models.setdefault(m.group(1).lower(), []).append(f)
    clusters = []
    for d in sorted((p for p in docs_root.iterdir() if p.is_dir()), key=_byte_key):
        cid = cluster_id_for(d.name)
        docs = tuple(
            RawDocument(f.name, strip_duc_sgml(f.read_text(encoding="utf-8", errors="replace")))
            for f in sorted((p for p in d.iterdir() if p.is_file()), key=_byte_key)
        )
        refs = tuple(f.read_text(encoding="utf-8", errors="replace") for f in models.get(cid, []))
        if not refs:
            raise CorpusError(f"{d}: no model summaries named {cid.upper()}.M.100.T.* in {models_dir}")
        clusters.append(Cluster(cid, docs, refs))
    if not clusters:
        raise CorpusError(f"{docs_root}: no cluster directories")
    return clusters


def convert_duc2004(docs_root, models_dir, out_root) -> list[Cluster]:
    clusters = read_duc_clusters(docs_root, models_dir)
    for c in clusters:
        write_cluster_dir(c, out_root)
    return clusters


def position_overlap(got, want) -> int:
    return len(set(got) & set(want))


def _summarize_job(job):
    cluster, cfg = job
    return summarize(cluster, cfg).text()


def run_variants(clusters, variants=None, jobs: int = 1) -> dict[str, CorpusReport]:
    """Summarize and score every cluster with each variant."""
    variants = VARIANTS if variants is None else variants
    references = {c.cluster_id: c.references for c in clusters}
    prepared = [as_prepared(c) for c in clusters]
    reports = {}
    for name, cfg in variants.items():
        jobs_list = [(p, cfg) for p in prepared]
        if jobs > 1:
            with ProcessPoolExecutor(jobs) as pool:
                texts = list(pool.map(_summarize_job, jobs_list))
        else:
            texts = [_summarize_job(j) for j in jobs_list]
        summaries = {p.cluster_id: t for p, t in zip(prepared, texts)}
        reports[name] = evaluate_corpus(summaries, references, DEFAULT_NS, cfg.word_limit)
    return reports


def example_positions(cluster, method: str) -> list[tuple[int, int]]:
    """Positions of the fully included sentences of the global summary with ``method`` preselection."""
    result = summarize(cluster, SummarizerConfig(variant="global", preselection=method))
    positions = result.positions
    return positions[:-1] if result.truncated_last else positions
