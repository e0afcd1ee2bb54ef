"""Document retrieval and passage scoring.

Retrieval is BM25 (k1=1.2, b=0.75) over the inverted index with
idf = ln(1 + (N - df + 0.5) / (df + 0.5)), which is non-negative, so
adding an occurrence of a matched term never lowers a passage score.

Passages are source paragraphs when the document has paragraph markup;
otherwise sentences are split on ./?/! followed by whitespace and an
uppercase letter, and windowed 3 at a time with stride 2.
"""

import math
import re
from collections import Counter
from dataclasses import dataclass

from .corpus import Document
from .index import InvertedIndex
from .text import tokenize

BM25_K1 = 1.2
BM25_B = 0.75

DEFAULT_COVERAGE_WEIGHT = 2.0

SENTENCES_PER_PASSAGE = 3
PASSAGE_STRIDE = 2


@dataclass(frozen=True)
class ScoredDocument:
    doc_id: str
    retrieval_score: float


@dataclass(frozen=True)
class Passage:
    doc_id: str
    char_span: tuple[int, int]
    text: str
    sentence_count: int
    passage_score: float = 0.0


def retrieve_documents(
    index: InvertedIndex, query_terms: list[str], k: int
) -> list[ScoredDocument]:
    """Top-k BM25; ties break by doc_id ascending. Empty query -> []."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not query_terms:
        return []
    avg = index.avg_doc_length
    scores: dict[str, float] = {}
    for term in query_terms:
        plist = index.postings.get(term)
        if not plist:
            continue
        idf = index.idf(term)
        for posting in plist:
            tf = posting.term_frequency
            dl = index.doc_lengths[posting.doc_id]
            denom = tf + BM25_K1 * (1.0 - BM25_B + BM25_B * dl / avg)
            scores[posting.doc_id] = scores.get(posting.doc_id, 0.0) + idf * tf * (
                BM25_K1 + 1.0
            ) / denom
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return [ScoredDocument(doc_id, score) for doc_id, score in ranked[:k]]


# A sentence ends at ./?/! when whitespace and an uppercase letter follow.
_SENT_BREAK_RE = re.compile(r"[.?!](?=\s+[A-Z])")


def split_sentences(text: str) -> list[tuple[int, int]]:
    """Character spans of sentences; spans cover the trimmed sentence text."""
    spans: list[tuple[int, int]] = []
    start = 0
    for m in _SENT_BREAK_RE.finditer(text):
        spans.append((start, m.end()))
        start = m.end()
    if start < len(text):
        spans.append((start, len(text)))
    trimmed: list[tuple[int, int]] = []
    for a, b in spans:
        while a < b and text[a].isspace():
            a += 1
        while b > a and text[b - 1].isspace():
            b -= 1
        if a < b:
            trimmed.append((a, b))
    return trimmed


def segment_passages(document: Document) -> list[Passage]:
    """Paragraph passages when markup exists, else 3-sentence windows."""
    text = document.text
    if not text:
        return []
    if document.paragraph_spans:
        return [
            Passage(
                document.doc_id,
                (a, b),
                text[a:b],
                sentence_count=len(split_sentences(text[a:b])),
            )
            for a, b in document.paragraph_spans
        ]
    sentences = split_sentences(text)
    if not sentences:
        return []
    passages: list[Passage] = []
    i = 0
    while True:
        window = sentences[i : i + SENTENCES_PER_PASSAGE]
        a, b = window[0][0], window[-1][1]
        passages.append(Passage(document.doc_id, (a, b), text[a:b], len(window)))
        if i + SENTENCES_PER_PASSAGE >= len(sentences):
            break
        i += PASSAGE_STRIDE
    return passages


def score_passage(
    passage: Passage,
    query_terms: list[str],
    index: InvertedIndex,
    coverage_weight: float = DEFAULT_COVERAGE_WEIGHT,
) -> float:
    """Sum of idf-weighted log term counts plus a query-coverage bonus."""
    if not query_terms:
        return 0.0
    counts = Counter(t.surface for t in tokenize(passage.text))
    score = 0.0
    matched = 0
    for term in query_terms:
        n = counts.get(term, 0)
        if n > 0:
            matched += 1
            score += index.idf(term) * (1.0 + math.log(n))
    return score + coverage_weight * (matched / len(query_terms))
