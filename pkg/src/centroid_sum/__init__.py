"""Centroid-based multi-document extractive summarization with ROUGE evaluation."""

from .corpus import Cluster, load_cluster_dir, load_corpus
from .rouge import evaluate_corpus, rouge_n_recall, rouge_report
from .summarizer import SummarizerConfig, SummaryResult, prepare_cluster, summarize
from .text import RawDocument, SentenceRecord
from .vectors import CentroidModel, SparseVector, build_centroid, cosine

__version__ = "0.1.0"

__all__ = [
    "CentroidModel",
    "Cluster",
    "RawDocument",
    "SentenceRecord",
    "SparseVector",
    "SummarizerConfig",
    "SummaryResult",
    "build_centroid",
    "cosine",
    "evaluate_corpus",
    "load_cluster_dir",
    "load_corpus",
    "prepare_cluster",
    "rouge_n_recall",
    "rouge_report",
    "summarize",
]
