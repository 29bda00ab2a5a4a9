"""Seeded synthetic clusters for tests, benchmarks and the bundled golden corpus."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .corpus import Cluster
from .text import RawDocument

_FILLERS = ("the", "of", "and", "a", "in", "to")


@dataclass(frozen=True)
class SyntheticSpec:
    num_docs: int = 10
    sents_per_doc: int = 8
    min_words: int = 8
    max_words: int = 25
    vocab_size: int = 3000
    num_refs: int = 4
    ref_words: int = 100
    # Zipf-like skew of the term distribution, 0 gives uniform draws
    skew: float = 1.0


def _vocab(size: int) -> list[str]:
    return [f"term{i}" for i in range(size)]


def _sentence(rng: random.Random, vocab, weights, spec: SyntheticSpec) -> str:
    k = rng.randint(spec.min_words, spec.max_words)
    words = rng.choices(vocab, weights, k=k)
    if rng.random() < 0.5:
        words.insert(rng.randrange(1, len(words) + 1), rng.choice(_FILLERS))
    return words[0].capitalize() + " " + " ".join(words[1:]) + "."


def make_cluster(rng: random.Random, cluster_id: str, spec: SyntheticSpec = SyntheticSpec()) -> Cluster:
    """One cluster; references are random sentence samples cut to ``ref_words``."""
    vocab = _vocab(spec.vocab_size)
    weights = [1.0 / (i + 1) ** spec.skew for i in range(spec.vocab_size)]
    docs = []
    pool = []
    for d in range(spec.num_docs):
        sents = [_sentence(rng, vocab, weights, spec) for _ in range(spec.sents_per_doc)]
        pool += sents
        docs.append(RawDocument(f"doc{d:03d}", " ".join(sents)))
    refs = []
    for _ in range(spec.num_refs):
        words: list[str] = []
        while len(words) < spec.ref_words:
            words += rng.choice(pool).split()
        refs.append(" ".join(words[: spec.ref_words]))
    return Cluster(cluster_id, tuple(docs), tuple(refs))


def make_corpus(num_clusters: int, spec: SyntheticSpec = SyntheticSpec(), seed: int = 0) -> list[Cluster]:
    rng = random.Random(seed)
    return [make_cluster(rng, f"syn{i:03d}", spec) for i in range(num_clusters)]
