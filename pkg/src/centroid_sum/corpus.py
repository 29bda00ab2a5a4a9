"""Cluster ingestion and development-set construction.

On disk a cluster is a directory::

    <cluster_id>/docs/*.txt   one plain-text document per file
    <cluster_id>/refs/*.txt   one reference summary per file

and a corpus root holds one such directory per cluster. File names fix the
document order (bytewise sort).
"""

from __future__ import annotations

import os
import random
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .text import RawDocument, load_stopwords, segment_sentences, tokenize


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class Cluster:
    cluster_id: str
    documents: tuple[RawDocument, ...]
    references: tuple[str, ...] = ()


@dataclass(frozen=True)
class Article:
    """A single news article with its highlight sentences."""

    article_id: str
    text: str
    highlights: tuple[str, ...] = field(default=())


def _byte_key(p: Path) -> bytes:
    return os.fsencode(p.name)


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc


def _text_files(directory: Path) -> list[Path]:
    return sorted((p for p in directory.iterdir() if p.is_file() and p.suffix == ".txt"), key=_byte_key)


def is_cluster_dir(path: str | os.PathLike) -> bool:
    return (Path(path) / "docs").is_dir()


def load_cluster_dir(path: str | os.PathLike) -> Cluster:
    path = Path(path)
    docs_dir = path / "docs"
    if not docs_dir.is_dir():
        raise CorpusError(f"{path}: missing docs directory")
    documents = []
    for f in _text_files(docs_dir):
        text = _read(f)
        if not text.strip():
            raise CorpusError(f"{f}: empty document")
        documents.append(RawDocument(f.stem, text))
    if not documents:
        raise CorpusError(f"{docs_dir}: no documents")
    refs_dir = path / "refs"
    refs = tuple(_read(f) for f in _text_files(refs_dir)) if refs_dir.is_dir() else ()
    return Cluster(path.name, tuple(documents), refs)


def load_corpus(root: str | os.PathLike) -> list[Cluster]:
    """Load a single cluster directory or every cluster under a corpus root."""
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"{root}: not a directory")
    if is_cluster_dir(root):
        return [load_cluster_dir(root)]
    subdirs = sorted((p for p in root.iterdir() if p.is_dir()), key=_byte_key)
    clusters = [load_cluster_dir(p) for p in subdirs if is_cluster_dir(p)]
    if not clusters:
        raise CorpusError(f"{root}: no cluster directories (expected <id>/docs/*.txt)")
    return clusters


def atomic_write(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_cluster_dir(cluster: Cluster, root: str | os.PathLike) -> Path:
    """Write ``cluster`` under ``root`` so that reloading keeps the document order."""
    out = Path(root) / cluster.cluster_id
    width = max(3, len(str(len(cluster.documents))))
    for i, doc in enumerate(cluster.documents):
        atomic_write(out / "docs" / f"{i:0{width}d}_{doc.doc_id}.txt", doc.text)
    for i, ref in enumerate(cluster.references):
        atomic_write(out / "refs" / f"ref{i}.txt", ref)
    return out


# --- DUC SGML -------------------------------------------------------------

_TAG_LINE = re.compile(r"^\s*<[^>]+>\s*$")
_TAG = re.compile(r"<[^>]+>")
_TEXT_BLOCK = re.compile(r"<TEXT>(.*?)</TEXT>", re.S | re.I)


def strip_duc_sgml(raw: str) -> str:
    """Keep the ``<TEXT>`` content of a DUC/TREC document and drop markup lines."""
    blocks = _TEXT_BLOCK.findall(raw) or [raw]
    out = []
    for block in blocks:
        for line in block.splitlines():
            if _TAG_LINE.match(line):
                # <P> markers separate paragraphs
                out.append("")
                continue
            out.append(_TAG.sub(" ", line))
    return re.sub(r"\n{3,}", "\n\n", "\n".join(out)).strip() + "\n"


# --- development clusters ---------------------------------------------------


def parse_story(text: str, marker: str = "@highlight") -> tuple[str, tuple[str, ...]]:
    """Split a CNN/DailyMail ``.story`` file into body text and highlights.

    Each highlight is the first non-empty line after a ``marker`` line.
    """
    body = []
    highlights = []
    expect = False
    seen_marker = False
    for line in text.splitlines():
        stripped = line.strip()
        if stripped == marker:
            expect = True
            seen_marker = True
            continue
        if expect:
            if stripped:
                highlights.append(stripped)
                expect = False
            continue
        if not seen_marker:
            body.append(line)
    return "\n".join(body).strip(), tuple(highlights)


def load_articles(directory: str | os.PathLike, marker: str = "@highlight") -> list[Article]:
    directory = Path(directory)
    if not directory.is_dir():
        raise CorpusError(f"{directory}: not a directory")
    files = sorted((p for p in directory.iterdir() if p.is_file()), key=_byte_key)
    articles = []
    for f in files:
        body, highlights = parse_story(_read(f), marker)
        if body:
            articles.append(Article(f.stem, body, highlights))
    return articles


def lead_terms(text: str, k: int = 3, stopwords: frozenset[str] | None = None) -> frozenset[str]:
    if stopwords is None:
        stopwords = load_stopwords()
    sents = segment_sentences(text)[:k]
    return frozenset(t for s in sents for t in tokenize(s) if t not in stopwords)


def first_k_overlap(
    a: RawDocument | str, b: RawDocument | str, k: int = 3, stopwords: frozenset[str] | None = None
) -> int:
    """Number of distinct content tokens shared by the first ``k`` sentences of each text."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ta = a.text if isinstance(a, RawDocument) else a
    tb = b.text if isinstance(b, RawDocument) else b
    return len(lead_terms(ta, k, stopwords) & lead_terms(tb, k, stopwords))


def interleave_references(summaries: Sequence[Sequence[str]], word_limit: int = 100) -> str:
    """Round-robin over the articles' summary sentences, cut to ``word_limit`` words."""
    if not summaries:
        raise ValueError("need at least one article summary")
    if not any(summaries):
        raise ValueError("all article summaries are empty")
    words: list[str] = []
    depth = 0
    longest = max(len(s) for s in summaries)
    while depth < longest and len(words) < word_limit:
        for sents in summaries:
            if depth < len(sents):
                words.extend(sents[depth].split())
                if len(words) >= word_limit:
                    break
        depth += 1
    return " ".join(words[:word_limit])


def build_dev_clusters(
    articles: Sequence[Article],
    num_clusters: int = 50,
    cluster_size: int = 10,
    seed: int = 13,
    k: int = 3,
    word_limit: int = 100,
    exclusive_members: bool = False,
    stopwords: frozenset[str] | None = None,
) -> list[Cluster]:
    """Assemble topical clusters around random seed articles.

    Seeds come from a seeded shuffle of the articles sorted by id. Each seed
    is joined by the ``cluster_size - 1`` articles that share the most lead
    terms with it (ties by article id). With ``exclusive_members`` an article
    is used at most once overall; by default only seeds are exclusive.
    """
    if cluster_size < 2:
        raise ValueError("cluster_size must be >= 2")
    if len(articles) < num_clusters:
        raise CorpusError(f"need at least {num_clusters} articles, got {len(articles)}")
    if len(articles) < cluster_size:
        raise CorpusError(f"need at least {cluster_size} articles, got {len(articles)}")
    ordered = sorted(articles, key=lambda a: a.article_id)
    if len({a.article_id for a in ordered}) != len(ordered):
        raise CorpusError("article ids must be unique")
    leads = {a.article_id: lead_terms(a.text, k, stopwords) for a in ordered}
    order = list(range(len(ordered)))
    random.Random(seed).shuffle(order)

    used: set[str] = set()
    clusters = []
    for idx in order:
        if len(clusters) == num_clusters:
            break
        seed_art = ordered[idx]
        if seed_art.article_id in used:
            continue
        pool = [
            a
            for a in ordered
            if a.article_id != seed_art.article_id
            and not (exclusive_members and a.article_id in used)
        ]
        own = leads[seed_art.article_id]
        pool.sort(key=lambda a: (-len(own & leads[a.article_id]), a.article_id))
        members = [seed_art] + pool[: cluster_size - 1]
        if len(members) < cluster_size:
            raise CorpusError("ran out of articles for exclusive clusters")
        used.add(seed_art.article_id)
        if exclusive_members:
            used.update(a.article_id for a in members)
        reference = interleave_references([list(a.highlights) for a in members], word_limit)
        clusters.append(
            Cluster(
                f"dev{len(clusters):03d}",
                tuple(RawDocument(a.article_id, a.text) for a in members),
                (reference,),
            )
        )
    if len(clusters) < num_clusters:
        raise CorpusError(f"could only build {len(clusters)} of {num_clusters} clusters")
    return clusters


def iter_references(clusters: Iterable[Cluster]) -> dict[str, tuple[str, ...]]:
    return {c.cluster_id: c.references for c in clusters}
