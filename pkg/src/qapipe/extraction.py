"""Candidate answer extraction and ranking.

Extraction dispatches on the expected answer type:

  NUM:date        date patterns ("12 January 2004", "January 12, 2004",
                  "January 2004", bare years 1000-2999)
  NUM:money       digit groups with currency context ($, dollar words)
  NUM:perc        digit groups with % / percent context
  NUM (others)    digit groups with thousands separators, optional
                  scale word (hundred ... trillion)
  ABBR:abb        all-caps or dotted abbreviation tokens
  HUM / LOC /     maximal runs of capitalized words (internal of/de/van
  ENTY / ABBR:exp allowed), minus lone sentence-initial words, stoplist
                  words, and echoes of the question's own query terms
  DESC            the passage's highest-scoring sentence

Ranking scores each candidate by its passage score plus a proximity
term (inverse token distance to each query term in the passage) plus a
redundancy term (how many passages repeat the candidate verbatim), then
deduplicates case-insensitively keeping the earliest source.
"""

import dataclasses
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import QAError
from .index import InvertedIndex
from .questions import QuestionAnalysis
from .retrieval import (
    Passage,
    retrieve_documents,
    score_passage,
    segment_passages,
    split_sentences,
)
from .serde import escape_field, unescape_field
from .stopwords import STOPWORDS
from .taxonomy import AnswerType
from .text import tokenize

DEFAULT_TOP_K = 50
DEFAULT_MAX_PASSAGES = 20
DEFAULT_PROXIMITY_WEIGHT = 1.0
DEFAULT_REDUNDANCY_WEIGHT = 0.5
GAZETTEER_BONUS = 1.0


class UnsupportedType(QAError):
    pass


@dataclass
class CandidateAnswer:
    text: str
    answer_type: AnswerType
    doc_id: str
    char_offset: int          # offset of `text` in the source document
    passage_index: int        # rank of the passage it came from
    passage_score: float
    proximity_score: float = 0.0
    redundancy_count: int = 1
    gazetteer_match: bool = False
    final_score: float = 0.0

    @property
    def source(self) -> tuple[str, int]:
        return (self.doc_id, self.char_offset)


@dataclass(frozen=True)
class AnswerRecord:
    qid: str
    answer: str | None        # None encodes NIL
    supporting_doc: str | None
    final_score: float
    rank_list_size: int


@dataclass(frozen=True)
class Gazetteers:
    persons: frozenset[str] = frozenset()
    locations: frozenset[str] = frozenset()


def load_gazetteer(path) -> frozenset[str]:
    """One name per line, case-insensitive membership."""
    names = {
        line.strip().lower()
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    }
    return frozenset(names)


_MONTH = (
    "January|February|March|April|May|June|July|August|September|October|November|December"
)
_DATE_PATTERNS = (
    re.compile(rf"\b\d{{1,2}}\s+(?:{_MONTH})\s+\d{{4}}\b", re.IGNORECASE),
    re.compile(rf"\b(?:{_MONTH})\s+\d{{1,2}},\s+\d{{4}}\b", re.IGNORECASE),
    re.compile(rf"\b(?:{_MONTH})\s+\d{{4}}\b", re.IGNORECASE),
    re.compile(r"\b[12]\d{3}\b"),
)

_NUMBER = r"\d[\d,]*(?:\.\d+)?"
_SCALE = r"(?:hundred|thousand|million|billion|trillion)"
_MONEY_PATTERNS = (
    re.compile(rf"\$\s?{_NUMBER}(?:\s+{_SCALE})?", re.IGNORECASE),
    re.compile(
        rf"\b{_NUMBER}(?:\s+{_SCALE})?\s+(?:dollars?|euros?|pounds?|cents?|francs?|yen)\b",
        re.IGNORECASE,
    ),
)
_PERCENT_PATTERN = re.compile(rf"\b{_NUMBER}\s?(?:%|percent|per cent)", re.IGNORECASE)
_GENERIC_NUMBER_PATTERN = re.compile(rf"\b{_NUMBER}(?:\s+{_SCALE})?\b", re.IGNORECASE)

_ABBREV_PATTERN = re.compile(r"\b(?:[A-Z]\.){2,}|\b[A-Z]{2,10}\b")

_CONNECTORS = ("of", "de", "van")
_CAP_WORD = r"[A-Z][A-Za-z'’\-]*"
_CAP_RUN_PATTERN = re.compile(
    rf"{_CAP_WORD}(?:\s+(?:(?:{'|'.join(_CONNECTORS)})\s+)?{_CAP_WORD})*"
)


def _collect_matches(text: str, patterns) -> list[tuple[int, str]]:
    """Matches in priority order; later patterns may not overlap earlier hits."""
    taken: list[tuple[int, int]] = []
    found: list[tuple[int, str]] = []
    for pattern in patterns:
        for m in pattern.finditer(text):
            a, b = m.span()
            if any(a < tb and ta < b for ta, tb in taken):
                continue
            taken.append((a, b))
            found.append((a, m.group(0)))
    found.sort()
    return found


def _drop_first_word(start: int, run: str, words: list[str]) -> tuple[int, str, list[str]]:
    cut = len(words[0])
    while cut < len(run) and run[cut].isspace():
        cut += 1
    return start + cut, run[cut:], words[1:]


def _capitalized_runs(text: str, query_terms, stoplist) -> list[tuple[int, str]]:
    sentence_starts = {a for a, _ in split_sentences(text)}
    query = {t.lower() for t in query_terms}
    out: list[tuple[int, str]] = []
    for m in _CAP_RUN_PATTERN.finditer(text):
        start, run = m.start(), m.group(0)
        words = run.split()
        # A sentence-initial stopword is capitalized by position, not by name.
        if start in sentence_starts and words[0].lower() in stoplist:
            start, run, words = _drop_first_word(start, run, words)
            while words and words[0].lower() in _CONNECTORS:
                start, run, words = _drop_first_word(start, run, words)
            if not words:
                continue
        if len(words) == 1 and start in sentence_starts:
            continue
        content = [w.lower() for w in words if w.lower() not in _CONNECTORS]
        if all(w in stoplist or w in query for w in content):
            continue
        out.append((start, run))
    return out


def _best_sentence(passage: Passage, query_terms, index) -> tuple[int, str] | None:
    best: tuple[int, str] | None = None
    best_score = float("-inf")
    for a, b in split_sentences(passage.text):
        pseudo = Passage(passage.doc_id, (a, b), passage.text[a:b], 1)
        s = score_passage(pseudo, query_terms, index)
        if s > best_score:
            best_score = s
            best = (a, passage.text[a:b])
    return best


def extract_candidates(
    passage: Passage,
    answer_type: AnswerType,
    query_terms: list[str] = (),
    index: InvertedIndex | None = None,
    gazetteers: Gazetteers | None = None,
    passage_index: int = 0,
) -> list[CandidateAnswer]:
    """Type-conditioned extraction; offsets are document-level."""
    coarse, fine = answer_type.coarse, answer_type.fine
    text = passage.text
    if coarse == "NUM":
        if fine == "date":
            hits = _collect_matches(text, _DATE_PATTERNS)
        elif fine == "money":
            hits = _collect_matches(text, _MONEY_PATTERNS)
        elif fine == "perc":
            hits = _collect_matches(text, (_PERCENT_PATTERN,))
        else:
            hits = _collect_matches(text, (_GENERIC_NUMBER_PATTERN,))
    elif coarse == "ABBR" and fine == "abb":
        hits = _collect_matches(text, (_ABBREV_PATTERN,))
    elif coarse in ("HUM", "LOC", "ENTY", "ABBR"):
        hits = _capitalized_runs(text, query_terms, STOPWORDS)
    elif coarse == "DESC":
        best = _best_sentence(passage, query_terms, index) if index is not None else None
        if best is None and text.strip():
            stripped = text.strip()
            best = (text.index(stripped[0]), stripped)
        hits = [best] if best else []
    else:
        raise UnsupportedType(f"no extraction branch for {answer_type.label}")

    base = passage.char_span[0]
    gaz = _gazetteer_for(coarse, gazetteers)
    return [
        CandidateAnswer(
            text=hit,
            answer_type=answer_type,
            doc_id=passage.doc_id,
            char_offset=base + offset,
            passage_index=passage_index,
            passage_score=passage.passage_score,
            gazetteer_match=hit.lower() in gaz,
        )
        for offset, hit in hits
    ]


def _gazetteer_for(coarse: str, gazetteers: Gazetteers | None) -> frozenset[str]:
    if gazetteers is None:
        return frozenset()
    if coarse == "HUM":
        return gazetteers.persons
    if coarse == "LOC":
        return gazetteers.locations
    return frozenset()


def _token_span(passage: Passage, candidate: CandidateAnswer, tokens) -> tuple[int, int]:
    rel_start = candidate.char_offset - passage.char_span[0]
    rel_end = rel_start + len(candidate.text)
    covering = [
        t.position
        for t in tokens
        if t.char_offset < rel_end and t.char_offset + len(t.surface) > rel_start
    ]
    if covering:
        return min(covering), max(covering)
    nearest = min(tokens, key=lambda t: abs(t.char_offset - rel_start), default=None)
    pos = nearest.position if nearest else 0
    return pos, pos


def rank_candidates(
    candidates: list[CandidateAnswer],
    analysis: QuestionAnalysis,
    passages: list[Passage],
    proximity_weight: float = DEFAULT_PROXIMITY_WEIGHT,
    redundancy_weight: float = DEFAULT_REDUNDANCY_WEIGHT,
) -> list[CandidateAnswer]:
    """Score, deduplicate, and order candidates best-first."""
    if not candidates:
        return []
    passage_tokens = [tokenize(p.text) for p in passages]
    lowered_passages = [p.text.lower() for p in passages]

    redundancy: dict[str, int] = {}
    for cand in candidates:
        key = cand.text.lower()
        if key not in redundancy:
            redundancy[key] = sum(1 for lp in lowered_passages if key in lp)

    scored: list[CandidateAnswer] = []
    for cand in candidates:
        passage = passages[cand.passage_index]
        tokens = passage_tokens[cand.passage_index]
        first, last = _token_span(passage, cand, tokens)
        prox = 0.0
        for term in analysis.query_terms:
            occurrences = [t.position for t in tokens if t.surface == term]
            if not occurrences:
                continue
            dist = min(
                0 if first <= o <= last else (first - o if o < first else o - last)
                for o in occurrences
            )
            prox += 1.0 / (1.0 + dist)
        red = redundancy[cand.text.lower()]
        final = (
            cand.passage_score
            + proximity_weight * prox
            + redundancy_weight * (red - 1)
            + (GAZETTEER_BONUS if cand.gazetteer_match else 0.0)
        )
        scored.append(
            dataclasses.replace(
                cand, proximity_score=prox, redundancy_count=red, final_score=final
            )
        )

    # Case-insensitive dedup keeping the earliest source.
    earliest: dict[str, CandidateAnswer] = {}
    for cand in scored:
        key = cand.text.lower()
        kept = earliest.get(key)
        if kept is None or (cand.passage_index, cand.char_offset) < (
            kept.passage_index,
            kept.char_offset,
        ):
            earliest[key] = cand
    return sorted(
        earliest.values(),
        key=lambda c: (-c.final_score, c.passage_index, c.char_offset, c.text),
    )


def answer_question(
    index: InvertedIndex,
    analysis: QuestionAnalysis,
    k: int = DEFAULT_TOP_K,
    max_passages: int = DEFAULT_MAX_PASSAGES,
    coverage_weight: float = 2.0,
    proximity_weight: float = DEFAULT_PROXIMITY_WEIGHT,
    redundancy_weight: float = DEFAULT_REDUNDANCY_WEIGHT,
    gazetteers: Gazetteers | None = None,
) -> AnswerRecord:
    """Retrieve, segment, score, extract, rank; NIL when nothing survives."""
    nil = AnswerRecord(analysis.qid, None, None, 0.0, 0)
    if not analysis.query_terms:
        return nil
    docs = retrieve_documents(index, analysis.query_terms, k)
    if not docs:
        return nil

    scored_passages: list[tuple[float, int, int, Passage]] = []
    for doc_rank, scored_doc in enumerate(docs):
        document = index.stored_docs[scored_doc.doc_id]
        for passage in segment_passages(document):
            s = score_passage(passage, analysis.query_terms, index, coverage_weight)
            scored_passages.append(
                (s, doc_rank, passage.char_span[0], dataclasses.replace(passage, passage_score=s))
            )
    scored_passages.sort(key=lambda item: (-item[0], item[1], item[2]))
    kept = [item[3] for item in scored_passages[:max_passages]]

    candidates: list[CandidateAnswer] = []
    for i, passage in enumerate(kept):
        candidates.extend(
            extract_candidates(
                passage,
                analysis.answer_type,
                analysis.query_terms,
                index=index,
                gazetteers=gazetteers,
                passage_index=i,
            )
        )
    ranked = rank_candidates(
        candidates, analysis, kept, proximity_weight, redundancy_weight
    )
    if not ranked:
        return nil
    top = ranked[0]
    return AnswerRecord(analysis.qid, top.text, top.doc_id, top.final_score, len(ranked))


def write_answers(records: list[AnswerRecord], path) -> None:
    """Stage 3 artifact: qid, answer or NIL, doc or -, score."""
    lines = []
    for r in records:
        lines.append(
            "\t".join(
                (
                    r.qid,
                    "NIL" if r.answer is None else escape_field(r.answer),
                    r.supporting_doc if r.supporting_doc is not None else "-",
                    f"{r.final_score:.6f}",
                )
            )
        )
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def load_answers(path) -> list[AnswerRecord]:
    out: list[AnswerRecord] = []
    for line_no, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise QAError(f"malformed answer record at line {line_no}")
        qid, answer, doc, score = fields
        is_nil = answer == "NIL" and doc == "-"
        out.append(
            AnswerRecord(
                qid,
                None if is_nil else unescape_field(answer),
                None if doc == "-" else doc,
                float(score),
                0,
            )
        )
    return out
