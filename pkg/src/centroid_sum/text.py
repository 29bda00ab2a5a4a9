"""Sentence segmentation, tokenization and stopword handling.

Everything here is a pure function of its inputs. The summarizer works on
lowercased, stopword-free tokens; stemming lives in :mod:`centroid_sum.porter`
and is only used by the ROUGE evaluator.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable

STOPWORDS_ENV = "CENTROID_SUM_STOPWORDS"

_PARAGRAPH_BREAK = re.compile(r"\n[ \t\r\f\v]*\n")
# terminal punctuation, optional closing quotes/brackets, then whitespace
_BOUNDARY = re.compile(r"[.!?]+[\"'’”)\]]*\s+")
_OPENERS = set("\"'‘“([")
_TOKEN = re.compile(r"[^\W_]+(?:'[^\W_]+)*")
_CURLY_APOSTROPHES = str.maketrans({"’": "'", "‘": "'"})


@dataclass(frozen=True)
class RawDocument:
    doc_id: str
    text: str


@dataclass(frozen=True)
class SentenceRecord:
    """One sentence of a cluster together with its position."""

    doc_index: int
    sent_index: int
    raw_text: str
    surface_tokens: tuple[str, ...]
    content_tokens: tuple[str, ...]

    @property
    def word_count(self) -> int:
        return len(self.surface_tokens)

    @property
    def position(self) -> tuple[int, int]:
        return (self.doc_index, self.sent_index)


def read_word_list(path: str | os.PathLike) -> list[str]:
    """Read a one-entry-per-line UTF-8 list; blank lines and ``#`` comments are skipped."""
    with open(path, encoding="utf-8") as fh:
        return _parse_word_list(fh)


def _parse_word_list(lines: Iterable[str]) -> list[str]:
    out = []
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _bundled(name: str) -> list[str]:
    text = resources.files("centroid_sum").joinpath("data", name).read_text(encoding="utf-8")
    return _parse_word_list(text.splitlines())


@lru_cache(maxsize=None)
def _bundled_stopwords() -> frozenset[str]:
    return frozenset(w.lower() for w in _bundled("smart_stopwords.txt"))


@lru_cache(maxsize=None)
def default_abbreviations() -> frozenset[str]:
    return frozenset(_bundled("abbreviations.txt"))


def load_stopwords(path: str | os.PathLike | None = None) -> frozenset[str]:
    """Return the stopword set.

    An explicit ``path`` wins, then the ``CENTROID_SUM_STOPWORDS`` environment
    variable, then the bundled SMART list.
    """
    if path is None:
        path = os.environ.get(STOPWORDS_ENV) or None
    if path is None:
        return _bundled_stopwords()
    return frozenset(w.lower() for w in read_word_list(path))


def _is_abbreviation(text: str, end: int, abbreviations: frozenset[str]) -> bool:
    # ``end`` is the index just past the terminal period
    start = end - 1
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start:end].lstrip("\"'‘“([") in abbreviations


def segment_sentences(
    text: str | RawDocument, abbreviations: frozenset[str] | None = None
) -> list[str]:
    """Split text into sentences.

    A sentence ends at ``.``, ``!`` or ``?`` (plus any closing quotes) when the
    next non-space character is uppercase or an opening quote, unless the
    period closes a known abbreviation. Blank lines always end
    a sentence. Internal whitespace runs are collapsed to single spaces.
    """
    if isinstance(text, RawDocument):
        text = text.text
    if abbreviations is None:
        abbreviations = default_abbreviations()
    sentences = []
    for paragraph in _PARAGRAPH_BREAK.split(text):
        start = 0
        for m in _BOUNDARY.finditer(paragraph):
            nxt = m.end()
            if nxt >= len(paragraph):
                break
            follower = paragraph[nxt]
            if not (follower.isupper() or follower in _OPENERS):
                continue
            punct = m.group(0).rstrip()
            if punct.rstrip("\"'’”)]") == ".":
                period_end = m.start() + 1
                if _is_abbreviation(paragraph, period_end, abbreviations):
                    continue
            _append(sentences, paragraph[start:nxt])
            start = nxt
        _append(sentences, paragraph[start:])
    return sentences


def _append(sentences: list[str], chunk: str) -> None:
    chunk = " ".join(chunk.split())
    if chunk:
        sentences.append(chunk)


def tokenize(sentence: str) -> list[str]:
    """Lowercased runs of letters/digits; apostrophes survive only word-internally."""
    return _TOKEN.findall(sentence.translate(_CURLY_APOSTROPHES).lower())


def remove_stopwords(tokens: Iterable[str], stopwords: frozenset[str] | None = None) -> list[str]:
    if stopwords is None:
        stopwords = load_stopwords()
    return [t for t in tokens if t not in stopwords]


def preprocess_document(
    doc: RawDocument | str,
    doc_index: int,
    stopwords: frozenset[str] | None = None,
    abbreviations: frozenset[str] | None = None,
) -> list[SentenceRecord]:
    """Segment and tokenize one document.

    Sentences without any token are dropped and the remaining ones are
    numbered densely from 0.
    """
    if stopwords is None:
        stopwords = load_stopwords()
    records = []
    for raw in segment_sentences(doc, abbreviations):
        surface = tokenize(raw)
        if not surface:
            continue
        content = tuple(t for t in surface if t not in stopwords)
        records.append(SentenceRecord(doc_index, len(records), raw, tuple(surface), content))
    return records
