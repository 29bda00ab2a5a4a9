"""ROUGE-N recall with the settings used for DUC-style evaluation.

Candidate and references are tokenized, cut to the first ``truncate_words``
tokens, Porter-stemmed and compared by clipped n-gram counts. Stopwords are
kept. Multiple references are averaged.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .porter import porter_stem
from .text import tokenize

DEFAULT_NS = (1, 2, 4)


class MissingReferenceError(KeyError):
    pass


def rouge_tokens(text: str, truncate_words: int | None = 100, stem: bool = True) -> list[str]:
    tokens = tokenize(text)
    if truncate_words is not None:
        tokens = tokens[:truncate_words]
    if stem:
        tokens = [porter_stem(t) for t in tokens]
    return tokens


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


@dataclass(frozen=True)
class RougeScore:
    """Recall for one n, averaged over references."""

    n: int
    recall: float
    per_reference: tuple[float, ...]


def _clipped_recall(cand: Counter, ref: Counter) -> float:
    total = sum(ref.values())
    hits = sum(min(c, cand[g]) for g, c in ref.items())
    return hits / total


def rouge_n_recall(
    candidate: str,
    references: Sequence[str],
    n: int,
    truncate_words: int | None = 100,
    stem: bool = True,
) -> RougeScore:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if truncate_words is not None and truncate_words < 1:
        raise ValueError("truncate_words must be >= 1")
    if not references:
        raise ValueError("at least one reference is required")
    ref_tokens = [rouge_tokens(r, truncate_words, stem) for r in references]
    if not any(ref_tokens):
        raise ValueError("all references are empty")
    cand = ngram_counts(rouge_tokens(candidate, truncate_words, stem), n)
    recalls = []
    for i, toks in enumerate(ref_tokens):
        if len(toks) < n:
            warnings.warn(f"reference {i} has fewer than {n} tokens; counted as recall 0")
            recalls.append(0.0)
            continue
        recalls.append(_clipped_recall(cand, ngram_counts(toks, n)))
    return RougeScore(n, sum(recalls) / len(recalls), tuple(recalls))


@dataclass(frozen=True)
class RougeReport:
    scores: Mapping[int, RougeScore]

    def __getitem__(self, n: int) -> float:
        return self.scores[n].recall

    @property
    def rouge_1(self) -> float:
        return self[1]

    @property
    def rouge_2(self) -> float:
        return self[2]

    @property
    def rouge_4(self) -> float:
        return self[4]


def rouge_report(
    candidate: str,
    references: Sequence[str],
    ns: Sequence[int] = DEFAULT_NS,
    truncate_words: int | None = 100,
    stem: bool = True,
) -> RougeReport:
    return RougeReport({n: rouge_n_recall(candidate, references, n, truncate_words, stem) for n in ns})


@dataclass(frozen=True)
class CorpusReport:
    """Mean per-cluster recall for each n, plus the per-cluster reports."""

    means: Mapping[int, float]
    clusters: Mapping[str, RougeReport]

    def __getitem__(self, n: int) -> float:
        return self.means[n]

    def percent(self, n: int) -> str:
        return f"{100.0 * self.means[n]:.2f}"


def evaluate_corpus(
    summaries: Mapping[str, str],
    references: Mapping[str, Sequence[str]],
    ns: Sequence[int] = DEFAULT_NS,
    truncate_words: int | None = 100,
    stem: bool = True,
) -> CorpusReport:
    if not summaries:
        raise ValueError("no summaries to evaluate")
    clusters = {}
    # sorted ids fix the summation order
    for cid in sorted(summaries):
        refs = references.get(cid)
        if not refs:
            raise MissingReferenceError(f"no references for cluster {cid!r}")
        clusters[cid] = rouge_report(summaries[cid], refs, ns, truncate_words, stem)
    means = {n: sum(rep[n] for rep in clusters.values()) / len(clusters) for n in ns}
    return CorpusReport(means, clusters)


def format_table(rows: Mapping[str, CorpusReport], ns: Sequence[int] = DEFAULT_NS) -> str:
    """Plain-text table, one row per model, recalls as percentages."""
    names = list(rows)
    width = max([len("Model")] + [len(n) for n in names])
    header = "Model".ljust(width) + "".join(f"  R-{n:<5}" for n in ns)
    lines = [header.rstrip()]
    for name in names:
        cells = "".join(f"  {rows[name].percent(n):<7}" for n in ns)
        lines.append((name.ljust(width) + cells).rstrip())
    return "\n".join(lines) + "\n"
