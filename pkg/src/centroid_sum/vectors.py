"""Cluster vocabulary, TF-IDF sentence vectors, the centroid and cosine similarity."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .text import SentenceRecord


class EmptyClusterError(ValueError):
    pass


@dataclass(frozen=True)
class SparseVector:
    """Nonnegative sparse vector stored as parallel, id-sorted tuples."""

    ids: tuple[int, ...] = ()
    weights: tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.ids) != len(self.weights):
            raise ValueError("ids and weights differ in length")
        if any(b <= a for a, b in zip(self.ids, self.ids[1:])):
            raise ValueError("term ids must be strictly increasing")
        if any(not w > 0.0 for w in self.weights):
            raise ValueError("weights must be positive (zeros are implicit)")

    @classmethod
    def from_mapping(cls, entries: Mapping[int, float]) -> "SparseVector":
        items = sorted((i, float(w)) for i, w in entries.items() if w != 0.0)
        return cls(tuple(i for i, _ in items), tuple(w for _, w in items))

    @classmethod
    def _from_positive(cls, entries: Mapping[int, float]) -> "SparseVector":
        # internal fast path: caller guarantees positive weights
        vec = object.__new__(cls)
        ids = tuple(sorted(entries))
        object.__setattr__(vec, "ids", ids)
        object.__setattr__(vec, "weights", tuple(entries[i] for i in ids))
        return vec

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.ids, self.weights))

    def items(self):
        return zip(self.ids, self.weights)

    def __len__(self) -> int:
        return len(self.ids)

    def __bool__(self) -> bool:
        return bool(self.ids)

    def norm(self) -> float:
        return math.sqrt(sum(w * w for w in self.weights))

    def dot(self, other: "SparseVector") -> float:
        if len(other) < len(self):
            self, other = other, self
        lookup = other.as_dict()
        return sum(w * lookup[i] for i, w in self.items() if i in lookup)

    def scale(self, alpha: float) -> "SparseVector":
        if alpha <= 0:
            raise ValueError("scale factor must be positive")
        return SparseVector(self.ids, tuple(w * alpha for w in self.weights))

    def __add__(self, other: "SparseVector") -> "SparseVector":
        acc = self.as_dict()
        for i, w in other.items():
            acc[i] = acc.get(i, 0.0) + w
        return SparseVector.from_mapping(acc)


def cosine(a: SparseVector, b: SparseVector) -> float:
    """Cosine of the angle between ``a`` and ``b``; 0 if either is the zero vector."""
    if not a or not b:
        return 0.0
    sim = a.dot(b) / (a.norm() * b.norm())
    return min(1.0, max(0.0, sim))


@dataclass(frozen=True)
class Vocabulary:
    term_ids: Mapping[str, int]
    terms: tuple[str, ...]
    df: tuple[int, ...]
    num_docs: int

    def __len__(self) -> int:
        return len(self.terms)


def build_vocabulary(sentences: Sequence[SentenceRecord], num_docs: int | None = None) -> Vocabulary:
    """Assign dense ids to content tokens in order of first appearance.

    ``df`` counts the distinct documents (by ``doc_index``) that contain a term.
    ``num_docs`` defaults to the number of distinct documents seen.
    """
    if not sentences:
        raise EmptyClusterError("empty cluster")
    docs_seen = {s.doc_index for s in sentences}
    if num_docs is None:
        num_docs = len(docs_seen)
    if num_docs < len(docs_seen):
        raise ValueError(f"num_docs={num_docs} but sentences span {len(docs_seen)} documents")
    # dict.fromkeys keeps first-appearance order
    term_ids = {t: i for i, t in enumerate(dict.fromkeys(t for s in sentences for t in s.content_tokens))}
    per_doc: dict[int, set[str]] = {}
    for s in sentences:
        per_doc.setdefault(s.doc_index, set()).update(s.content_tokens)
    df = Counter(t for terms in per_doc.values() for t in terms)
    terms = tuple(term_ids)
    return Vocabulary(term_ids, terms, tuple(df[t] for t in terms), num_docs)


def idf_table(vocab: Vocabulary) -> tuple[float, ...]:
    # +1 keeps terms that occur in every document from vanishing
    return tuple(math.log(vocab.num_docs / df) + 1.0 for df in vocab.df)


@dataclass(frozen=True)
class CentroidModel:
    vocabulary: Vocabulary
    idf: tuple[float, ...]
    raw_centroid: SparseVector
    pruned_centroid: SparseVector
    v: float
    _norm: float = field(default=0.0, repr=False, compare=False)

    @property
    def centroid_norm(self) -> float:
        return self._norm

    def sentence_vector(self, s: SentenceRecord) -> SparseVector:
        """Raw term count times idf; out-of-vocabulary tokens are ignored."""
        return _tfidf(s.content_tokens, self.vocabulary.term_ids, self.idf)

    def score(self, vec: SparseVector) -> float:
        """Same value as ``cosine(vec, pruned_centroid)``, reusing the cached centroid norm."""
        cent = self.pruned_centroid
        if not vec or not cent:
            return 0.0
        # mirror SparseVector.dot so the summation order is unchanged
        if len(cent) < len(vec):
            lookup = vec.as_dict()
            dot = sum(w * lookup[i] for i, w in cent.items() if i in lookup)
        else:
            lookup = self._centroid_lookup
            dot = sum(w * lookup[i] for i, w in vec.items() if i in lookup)
        sim = dot / (vec.norm() * (self._norm or cent.norm()))
        return min(1.0, max(0.0, sim))

    @property
    def _centroid_lookup(self) -> dict[int, float]:
        cached = self.__dict__.get("_lookup")
        if cached is None:
            cached = self.pruned_centroid.as_dict()
            object.__setattr__(self, "_lookup", cached)
        return cached


def prune_top(raw: SparseVector, v: float) -> SparseVector:
    """Keep the top ``ceil(v * k)`` of the ``k`` nonzero entries by weight.

    Ties go to the lower term id. ``v = 0`` keeps the single largest entry.
    """
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"v must lie in [0, 1], got {v}")
    k = len(raw)
    # round() absorbs products like 0.7 * 10 = 7.000000000000001
    keep = max(1, math.ceil(round(v * k, 9))) if k else 0
    if keep >= k:
        return raw
    ranked = sorted(raw.items(), key=lambda e: (-e[1], e[0]))[:keep]
    return SparseVector.from_mapping(dict(ranked))


def _tfidf(tokens: Iterable[str], term_ids: Mapping[str, int], idf: Sequence[float]) -> SparseVector:
    weights = {}
    for t, c in Counter(tokens).items():
        i = term_ids.get(t)
        if i is not None:
            weights[i] = c * idf[i]
    return SparseVector._from_positive(weights)


def sum_vectors(vectors: Iterable[SparseVector]) -> SparseVector:
    acc: dict[int, float] = {}
    for vec in vectors:
        for i, w in vec.items():
            acc[i] = acc.get(i, 0.0) + w
    return SparseVector.from_mapping(acc)


def build_centroid_and_vectors(
    sentences: Sequence[SentenceRecord], v: float, num_docs: int | None = None
) -> tuple[CentroidModel, dict[tuple[int, int], SparseVector]]:
    """Like :func:`build_centroid`, also returning each sentence's vector by position."""
    vocab = build_vocabulary(sentences, num_docs)
    idf = idf_table(vocab)
    vectors = {s.position: _tfidf(s.content_tokens, vocab.term_ids, idf) for s in sentences}
    # summed in cluster order so the result does not depend on dict internals
    raw = sum_vectors(vectors[s.position] for s in sentences)
    pruned = prune_top(raw, v)
    return CentroidModel(vocab, idf, raw, pruned, v, pruned.norm()), vectors


def build_centroid(
    sentences: Sequence[SentenceRecord], v: float, num_docs: int | None = None
) -> CentroidModel:
    """Centroid over every sentence of the cluster, then pruned with ratio ``v``."""
    return build_centroid_and_vectors(sentences, v, num_docs)[0]


def dump_centroid(model: CentroidModel, pruned: bool = True) -> str:
    """``term<TAB>weight`` lines, heaviest first."""
    vec = model.pruned_centroid if pruned else model.raw_centroid
    rows = sorted(vec.items(), key=lambda e: (-e[1], e[0]))
    return "".join(f"{model.vocabulary.terms[i]}\t{w!r}\n" for i, w in rows)
