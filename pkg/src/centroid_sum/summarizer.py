"""Centroid-based extractive summarization.

Two selection strategies share one candidate pipeline:

* ``ranked``: sentences are ordered by their own cosine to the centroid and
  de-queued, optionally skipping those too similar to an earlier pick.
* ``global``: the summary is grown greedily, each step adding the candidate
  whose inclusion makes the summed summary vector closest to the centroid.

Before selection the pool can be cut down to ``n`` sentences per document
(``n_first``, ``n_best`` or ``new_tfidf``). The centroid is always built from
every sentence of the cluster.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .text import RawDocument, SentenceRecord, load_stopwords, preprocess_document, tokenize
from .vectors import CentroidModel, SparseVector, build_centroid_and_vectors, cosine

VARIANTS = ("ranked", "global")
PRESELECTIONS = ("none", "n_first", "n_best", "new_tfidf")
# per-method N values found best on the development clusters
DEFAULT_N = {"n_first": 7, "n_best": 2, "new_tfidf": 3}

# Scores are compared after rounding to this many decimals so that ordering
# does not hinge on the last bits of floating-point summation order.
SCORE_DECIMALS = 12


@dataclass(frozen=True)
class SummarizerConfig:
    variant: str = "global"
    redundancy_filter: bool = True
    r: float = 0.6
    v: float = 0.1
    preselection: str = "none"
    n: int | None = None
    word_limit: int = 100

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.preselection not in PRESELECTIONS:
            raise ValueError(
                f"unknown preselection {self.preselection!r}; expected one of {PRESELECTIONS}"
            )
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"r must lie in [0, 1], got {self.r}")
        if not 0.0 <= self.v <= 1.0:
            raise ValueError(f"v must lie in [0, 1], got {self.v}")
        if self.n is not None and self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.word_limit < 1:
            raise ValueError(f"word_limit must be >= 1, got {self.word_limit}")

    @property
    def resolved_n(self) -> int | None:
        if self.preselection == "none":
            return self.n
        return self.n if self.n is not None else DEFAULT_N[self.preselection]

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            "redundancy_filter": self.redundancy_filter,
            "r": self.r,
            "v": self.v,
            "preselection": self.preselection,
            "n": self.resolved_n,
            "word_limit": self.word_limit,
        }


@dataclass(frozen=True)
class SummaryResult:
    selected: tuple[SentenceRecord, ...]
    step_scores: tuple[float, ...]
    total_words: int
    truncated_last: bool
    word_limit: int

    @property
    def positions(self) -> list[tuple[int, int]]:
        return [s.position for s in self.selected]

    def text(self) -> str:
        """Summary text; a final sentence crossing the limit is cut to fit."""
        parts = [s.raw_text for s in self.selected]
        if self.truncated_last and parts:
            budget = self.word_limit - (self.total_words - self.selected[-1].word_count)
            parts[-1] = _truncate_to_tokens(parts[-1], budget)
        return " ".join(p for p in parts if p)

    def sidecar(self) -> str:
        return "".join(
            f"{s.doc_index}\t{s.sent_index}\t{score!r}\n"
            for s, score in zip(self.selected, self.step_scores)
        )


def _truncate_to_tokens(raw: str, budget: int) -> str:
    kept = []
    used = 0
    for word in raw.split():
        if used >= budget:
            break
        kept.append(word)
        used += len(tokenize(word))
    return " ".join(kept)


@dataclass(frozen=True)
class PreparedCluster:
    """A cluster after segmentation and tokenization."""

    cluster_id: str
    documents: tuple[tuple[SentenceRecord, ...], ...]
    num_docs: int

    @property
    def sentences(self) -> list[SentenceRecord]:
        return [s for doc in self.documents for s in doc]


def prepare_cluster(
    documents: Sequence[RawDocument | str],
    cluster_id: str = "",
    stopwords: frozenset[str] | None = None,
    abbreviations: frozenset[str] | None = None,
) -> PreparedCluster:
    if stopwords is None:
        stopwords = load_stopwords()
    docs = tuple(
        tuple(preprocess_document(d, i, stopwords, abbreviations)) for i, d in enumerate(documents)
    )
    return PreparedCluster(cluster_id, docs, len(documents))


def _rank_key(score: float, s: SentenceRecord) -> tuple[float, int, int]:
    return (-round(score, SCORE_DECIMALS), s.doc_index, s.sent_index)


def _top_per_doc(
    doc_sentences: Sequence[Sequence[SentenceRecord]], n: int, scores: dict
) -> list[SentenceRecord]:
    pool = []
    for doc in doc_sentences:
        best = sorted(doc, key=lambda s: _rank_key(scores[s.position], s))[:n]
        pool.extend(sorted(best, key=lambda s: s.sent_index))
    return pool


def preselect_n_first(doc_sentences: Sequence[Sequence[SentenceRecord]], n: int) -> list[SentenceRecord]:
    if n < 1:
        raise ValueError("n must be >= 1")
    return [s for doc in doc_sentences for s in doc if s.sent_index < n]


def preselect_n_best(
    doc_sentences: Sequence[Sequence[SentenceRecord]],
    model: CentroidModel,
    n: int,
    vectors: dict | None = None,
) -> list[SentenceRecord]:
    """Per document, the ``n`` sentences closest to the centroid."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if vectors is None:
        vectors = {s.position: model.sentence_vector(s) for doc in doc_sentences for s in doc}
    scores = {pos: model.score(vec) for pos, vec in vectors.items()}
    return _top_per_doc(doc_sentences, n, scores)


def new_tfidf_scores(
    doc_sentences: Sequence[Sequence[SentenceRecord]], model: CentroidModel
) -> dict[tuple[int, int], float]:
    """Sum of tf-idf weights of the terms a sentence mentions first in its document."""
    term_ids = model.vocabulary.term_ids
    scores = {}
    for doc in doc_sentences:
        seen: set[str] = set()
        for s in doc:
            fresh: dict[str, int] = {}
            for t in s.content_tokens:
                if t not in seen and t in term_ids:
                    fresh[t] = fresh.get(t, 0) + 1
            scores[s.position] = sum(c * model.idf[term_ids[t]] for t, c in fresh.items())
            seen.update(s.content_tokens)
    return scores


def preselect_new_tfidf(
    doc_sentences: Sequence[Sequence[SentenceRecord]], model: CentroidModel, n: int
) -> list[SentenceRecord]:
    if n < 1:
        raise ValueError("n must be >= 1")
    return _top_per_doc(doc_sentences, n, new_tfidf_scores(doc_sentences, model))


def _summary_score(vecs: Sequence[SparseVector], model: CentroidModel) -> float:
    acc: dict[int, float] = {}
    for vec in vecs:
        for i, w in vec.items():
            acc[i] = acc.get(i, 0.0) + w
    return model.score(SparseVector.from_mapping(acc))


def summarize_ranked(
    candidates: Sequence[SentenceRecord],
    model: CentroidModel,
    cfg: SummarizerConfig,
    vectors: dict | None = None,
) -> SummaryResult:
    if vectors is None:
        vectors = {s.position: model.sentence_vector(s) for s in candidates}
    ranked = sorted(candidates, key=lambda s: _rank_key(model.score(vectors[s.position]), s))
    selected: list[SentenceRecord] = []
    chosen_vecs: list[SparseVector] = []
    scores: list[float] = []
    total = 0
    for s in ranked:
        if total >= cfg.word_limit:
            break
        vec = vectors[s.position]
        if cfg.redundancy_filter and any(cosine(vec, other) > cfg.r for other in chosen_vecs):
            continue
        selected.append(s)
        chosen_vecs.append(vec)
        total += s.word_count
        scores.append(_summary_score(chosen_vecs, model))
    return SummaryResult(tuple(selected), tuple(scores), total, total > cfg.word_limit, cfg.word_limit)


@dataclass
class _Candidate:
    record: SentenceRecord
    vec: SparseVector
    terms: dict[int, float]
    centroid_dot: float
    sq_norm: float
    norm: float = field(init=False)

    def __post_init__(self):
        self.norm = math.sqrt(self.sq_norm)


def summarize_global(
    candidates: Sequence[SentenceRecord],
    model: CentroidModel,
    cfg: SummarizerConfig,
    vectors: dict | None = None,
) -> SummaryResult:
    """Greedy summary-level selection.

    The running summary vector is kept as a sum, so scoring a candidate costs
    one sparse dot product against that sum.
    """
    if vectors is None:
        vectors = {s.position: model.sentence_vector(s) for s in candidates}
    centroid = model.pruned_centroid.as_dict()
    c_norm = model.centroid_norm
    pool = []
    for s in candidates:
        vec = vectors[s.position]
        terms = vec.as_dict()
        c_dot = sum(w * centroid[i] for i, w in terms.items() if i in centroid)
        pool.append(_Candidate(s, vec, terms, c_dot, sum(w * w for w in terms.values())))

    summary: dict[int, float] = {}
    s_dot = 0.0
    s_sq = 0.0
    selected: list[SentenceRecord] = []
    scores: list[float] = []
    total = 0
    while total < cfg.word_limit and pool:
        # candidates with no overlap with the centroid wait until nothing else is left
        eligible = [c for c in pool if c.centroid_dot > 0.0] or pool
        best = None
        best_key = None
        best_score = 0.0
        for c in eligible:
            cross = sum(w * summary[i] for i, w in c.terms.items() if i in summary)
            num = s_dot + c.centroid_dot
            sq = s_sq + 2.0 * cross + c.sq_norm
            score = num / (math.sqrt(sq) * c_norm) if num > 0.0 and sq > 0.0 else 0.0
            score = min(1.0, score)
            key = _rank_key(score, c.record)
            if best_key is None or key < best_key:
                best, best_key, best_score = c, key, score
        pool.remove(best)
        selected.append(best.record)
        scores.append(best_score)
        total += best.record.word_count
        for i, w in best.terms.items():
            summary[i] = summary.get(i, 0.0) + w
        s_dot = sum(w * centroid[i] for i, w in summary.items() if i in centroid)
        s_sq = sum(w * w for w in summary.values())
        if cfg.redundancy_filter:
            pool = [c for c in pool if _pair_cosine(c, best) <= cfg.r]
    return SummaryResult(tuple(selected), tuple(scores), total, total > cfg.word_limit, cfg.word_limit)


def _pair_cosine(a: _Candidate, b: _Candidate) -> float:
    if a.norm == 0.0 or b.norm == 0.0:
        return 0.0
    small, large = (a.terms, b.terms) if len(a.terms) <= len(b.terms) else (b.terms, a.terms)
    dot = sum(w * large[i] for i, w in small.items() if i in large)
    return min(1.0, dot / (a.norm * b.norm))


def preselect(
    prepared: PreparedCluster,
    model: CentroidModel,
    cfg: SummarizerConfig,
    vectors: dict | None = None,
) -> list[SentenceRecord]:
    docs = prepared.documents
    n = cfg.resolved_n
    if cfg.preselection == "none":
        return prepared.sentences
    if cfg.preselection == "n_first":
        return preselect_n_first(docs, n)
    if cfg.preselection == "n_best":
        return preselect_n_best(docs, model, n, vectors)
    return preselect_new_tfidf(docs, model, n)


def summarize(
    cluster,
    cfg: SummarizerConfig = SummarizerConfig(),
    stopwords: frozenset[str] | None = None,
) -> SummaryResult:
    """Run the full pipeline on a cluster.

    ``cluster`` may be a :class:`PreparedCluster`, anything with a
    ``documents`` attribute holding raw documents, or a plain list of
    documents.
    """
    prepared = as_prepared(cluster, stopwords)
    sentences = prepared.sentences
    if not sentences:
        return SummaryResult((), (), 0, False, cfg.word_limit)
    model, vectors = build_centroid_and_vectors(sentences, cfg.v, prepared.num_docs)
    candidates = preselect(prepared, model, cfg, vectors)
    if cfg.variant == "ranked":
        return summarize_ranked(candidates, model, cfg, vectors)
    return summarize_global(candidates, model, cfg, vectors)


def as_prepared(cluster, stopwords: frozenset[str] | None = None) -> PreparedCluster:
    if isinstance(cluster, PreparedCluster):
        return cluster
    documents = getattr(cluster, "documents", cluster)
    return prepare_cluster(documents, getattr(cluster, "cluster_id", ""), stopwords)
