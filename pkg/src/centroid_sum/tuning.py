"""Grid search over summarizer hyperparameters on a development corpus."""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .corpus import Cluster
from .rouge import DEFAULT_NS, CorpusReport, evaluate_corpus
from .summarizer import PreparedCluster, SummarizerConfig, as_prepared, summarize

RATIO_GRID = tuple(round(i / 10, 1) for i in range(11))
N_GRID = tuple(range(1, 11))
OBJECTIVES = {"rouge_1": 1, "rouge_2": 2, "rouge_4": 4}


@dataclass(frozen=True)
class GridResult:
    param_names: tuple[str, ...]
    entries: Mapping[tuple, CorpusReport]
    objective: str
    best: tuple

    @property
    def best_report(self) -> CorpusReport:
        return self.entries[self.best]

    def to_tsv(self, ns: Sequence[int] = DEFAULT_NS) -> str:
        header = "\t".join(self.param_names + tuple(f"R-{n}" for n in ns))
        lines = [header]
        for params in sorted(self.entries):
            rep = self.entries[params]
            cells = [_fmt(p) for p in params] + [rep.percent(n) for n in ns]
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"


def _fmt(value) -> str:
    return f"{value:.1f}" if isinstance(value, float) else str(value)


def pick_best(entries: Mapping[tuple, CorpusReport], objective: str = "rouge_1") -> tuple:
    """Argmax of the objective; ties resolve to the smallest parameter tuple."""
    n = OBJECTIVES[objective]
    best = None
    for params in sorted(entries):
        if best is None or entries[params][n] > entries[best][n]:
            best = params
    return best


def cluster_digest(prepared: PreparedCluster) -> str:
    h = hashlib.sha256()
    h.update(prepared.cluster_id.encode())
    for doc in prepared.documents:
        h.update(b"\x1d")
        for s in doc:
            h.update(s.raw_text.encode())
            h.update(b"\x1e")
    return h.hexdigest()


class Evaluator:
    """Scores configurations on a fixed development corpus, caching per cluster."""

    def __init__(
        self,
        dev_corpus: Sequence[Cluster],
        ns: Sequence[int] = DEFAULT_NS,
        stopwords: frozenset[str] | None = None,
    ):
        if not dev_corpus:
            raise ValueError("empty development corpus")
        self.ns = tuple(ns)
        self.prepared = [as_prepared(c, stopwords) for c in dev_corpus]
        self.references = {c.cluster_id: c.references for c in dev_corpus}
        self.digests = [cluster_digest(p) for p in self.prepared]
        self._summaries: dict[tuple[str, SummarizerConfig], str] = {}

    def summary(self, i: int, cfg: SummarizerConfig) -> str:
        key = (self.digests[i], cfg)
        text = self._summaries.get(key)
        if text is None:
            text = self._summaries[key] = summarize(self.prepared[i], cfg).text()
        return text

    def __call__(self, cfg: SummarizerConfig) -> CorpusReport:
        summaries = {p.cluster_id: self.summary(i, cfg) for i, p in enumerate(self.prepared)}
        return evaluate_corpus(summaries, self.references, self.ns, cfg.word_limit)


_worker_evaluator: Evaluator | None = None


def _init_worker(evaluator: Evaluator) -> None:
    global _worker_evaluator
    _worker_evaluator = evaluator


def _run_worker(cfg: SummarizerConfig) -> CorpusReport:
    return _worker_evaluator(cfg)


def run_grid(
    evaluator: Evaluator,
    configs: Mapping[tuple, SummarizerConfig],
    param_names: tuple[str, ...],
    objective: str = "rouge_1",
    jobs: int = 1,
) -> GridResult:
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; expected one of {sorted(OBJECTIVES)}")
    keys = sorted(configs)
    if jobs > 1:
        with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(evaluator,)) as pool:
            reports = list(pool.map(_run_worker, [configs[k] for k in keys]))
    else:
        reports = [evaluator(configs[k]) for k in keys]
    entries = dict(zip(keys, reports))
    return GridResult(param_names, entries, objective, pick_best(entries, objective))


def tune_rv(
    dev_corpus: Sequence[Cluster] | Evaluator,
    cfg_base: SummarizerConfig = SummarizerConfig(variant="ranked"),
    objective: str = "rouge_1",
    r_values: Sequence[float] = RATIO_GRID,
    v_values: Sequence[float] = RATIO_GRID,
    jobs: int = 1,
) -> GridResult:
    """Redundancy threshold and centroid ratio, tuned on the ranked model."""
    if cfg_base.variant != "ranked":
        raise ValueError("r and v are tuned with the ranked variant")
    evaluator = dev_corpus if isinstance(dev_corpus, Evaluator) else Evaluator(dev_corpus)
    configs = {(r, v): replace(cfg_base, r=r, v=v) for r in r_values for v in v_values}
    return run_grid(evaluator, configs, ("r", "v"), objective, jobs)


def tune_n(
    dev_corpus: Sequence[Cluster] | Evaluator,
    cfg_base: SummarizerConfig,
    method: str,
    objective: str = "rouge_1",
    n_values: Sequence[int] = N_GRID,
    jobs: int = 1,
) -> GridResult:
    """Sentences kept per document for one preselection method, on the global model."""
    if cfg_base.variant != "global":
        raise ValueError("n is tuned with the global variant")
    if method == "none":
        raise ValueError("tune_n needs a preselection method")
    evaluator = dev_corpus if isinstance(dev_corpus, Evaluator) else Evaluator(dev_corpus)
    configs = {(n,): replace(cfg_base, preselection=method, n=n) for n in n_values}
    return run_grid(evaluator, configs, ("n",), objective, jobs)
