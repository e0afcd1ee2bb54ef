"""Question input handling and per-question analysis.

Two input formats:

trec-xml:
    <target text="..."> blocks containing <q id="...">question</q>
    entries; every question in a block carries the block's target topic.

qline:
    one `qid <TAB> question` per line, no target.

Analysis turns a question into the retrieval stage's input: query terms
(stopwords dropped, order-preserving dedup, target terms appended) and
an expected answer type from the trained classifier, with a small rule
table overriding low-confidence model output.
"""

import re
from dataclasses import dataclass, field
from pathlib import Path

from .classifier import ClassifierModel, classify_question
from .errors import QAError
from .taxonomy import AnswerType, parse_label
from .text import Token, remove_stopwords, tokenize

QUESTION_FORMATS = ("trec-xml", "qline")


@dataclass(frozen=True)
class Question:
    qid: str
    text: str
    target: str | None = None


@dataclass(frozen=True)
class MalformedQuestion:
    location: str
    reason: str


class DuplicateQid(QAError):
    pass


class UnknownQuestionFormat(QAError):
    pass


@dataclass
class QuestionAnalysis:
    qid: str
    text: str
    tokens: list[Token]
    query_terms: list[str]
    answer_type: AnswerType
    classifier_source: str  # "model" | "rule" | "default"


_TARGET_RE = re.compile(r'<target\s+text="([^"]*)"\s*>(.*?)</target>', re.DOTALL)
_Q_RE = re.compile(r'<q\s+id="([^"]*)"\s*>(.*?)</q>', re.DOTALL)


def parse_questions(
    path, fmt: str, rejects: list[MalformedQuestion] | None = None
) -> list[Question]:
    """Parse the question file; duplicate qids are fatal."""
    if fmt not in QUESTION_FORMATS:
        raise UnknownQuestionFormat(f"unknown question format: {fmt!r}")
    raw = Path(path).read_text(encoding="utf-8")
    sink = rejects if rejects is not None else []
    questions = (
        _parse_trec_xml(raw, sink) if fmt == "trec-xml" else _parse_qline(raw, sink)
    )
    seen: set[str] = set()
    for q in questions:
        if q.qid in seen:
            raise DuplicateQid(f"duplicate qid: {q.qid}")
        seen.add(q.qid)
    return questions


def _parse_trec_xml(raw: str, rejects: list[MalformedQuestion]) -> list[Question]:
    out: list[Question] = []
    for t_no, t_match in enumerate(_TARGET_RE.finditer(raw), start=1):
        target = t_match.group(1).strip() or None
        for q_no, q_match in enumerate(_Q_RE.finditer(t_match.group(2)), start=1):
            where = f"target {t_no} question {q_no}"
            qid = q_match.group(1).strip()
            text = q_match.group(2).strip()
            if not qid:
                rejects.append(MalformedQuestion(where, "empty question id"))
                continue
            if not text:
                rejects.append(MalformedQuestion(where, "empty question text"))
                continue
            out.append(Question(qid, text, target))
    return out


def _parse_qline(raw: str, rejects: list[MalformedQuestion]) -> list[Question]:
    out: list[Question] = []
    for line_no, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        where = f"line {line_no}"
        fields = line.split("\t")
        if len(fields) != 2:
            rejects.append(
                MalformedQuestion(where, f"expected 2 tab-separated fields, got {len(fields)}")
            )
            continue
        qid, text = fields[0].strip(), fields[1].strip()
        if not qid or not text:
            rejects.append(MalformedQuestion(where, "empty qid or question"))
            continue
        out.append(Question(qid, text))
    return out


# Wh-word rules protecting obvious cases when the model is unsure.
_PREFIX_RULES = (
    ("how many", ("NUM", "count")),
    ("how much", ("NUM", "count")),
    ("who", ("HUM", "ind")),
    ("where", ("LOC", "other")),
    ("when", ("NUM", "date")),
)
_CONTAINS_RULES = (
    ("what year", ("NUM", "date")),
    ("which year", ("NUM", "date")),
)


def rule_fallback(text: str) -> AnswerType | None:
    lowered = text.strip().lower()
    for prefix, (coarse, fine) in _PREFIX_RULES:
        if lowered.startswith(prefix):
            return AnswerType(coarse, fine, 1.0)
    for needle, (coarse, fine) in _CONTAINS_RULES:
        if needle in lowered:
            return AnswerType(coarse, fine, 1.0)
    return None


def analyze(
    question: Question,
    model: ClassifierModel | None,
    stoplist: frozenset[str],
) -> QuestionAnalysis:
    """Build the stage-2 record for one question."""
    tokens = tokenize(question.text)
    query_terms: list[str] = []
    seen: set[str] = set()
    for tok in remove_stopwords(tokens, stoplist):
        if tok.surface not in seen:
            seen.add(tok.surface)
            query_terms.append(tok.surface)
    if question.target:
        for tok in remove_stopwords(tokenize(question.target), stoplist):
            if tok.surface not in seen:
                seen.add(tok.surface)
                query_terms.append(tok.surface)

    rule = rule_fallback(question.text)
    if model is not None:
        model_type = classify_question(model, question.text)
        if rule is not None and model_type.confidence < 0.5:
            answer_type, source = rule, "rule"
        else:
            answer_type, source = model_type, "model"
    elif rule is not None:
        answer_type, source = rule, "rule"
    else:
        answer_type, source = AnswerType("DESC", None, 0.0), "default"
    return QuestionAnalysis(question.qid, question.text, tokens, query_terms, answer_type, source)


def write_analyses(analyses: list[QuestionAnalysis], path) -> None:
    """Stage 2 -> 3 hand-off artifact, one record per question."""
    lines = []
    for a in analyses:
        t = a.answer_type
        lines.append(
            "\t".join(
                (
                    a.qid,
                    " ".join(a.query_terms),
                    t.coarse,
                    t.fine if t.fine is not None else "-",
                    f"{t.confidence:.6f}",
                    a.classifier_source,
                )
            )
        )
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def load_analyses(path) -> list[QuestionAnalysis]:
    """Read the stage-2 artifact; text and tokens are not part of it."""
    out: list[QuestionAnalysis] = []
    for line_no, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 6:
            raise QAError(f"malformed analysis record at line {line_no}")
        qid, terms, coarse, fine, confidence, source = fields
        parse_label(coarse if fine == "-" else f"{coarse}:{fine}")
        out.append(
            QuestionAnalysis(
                qid=qid,
                text="",
                tokens=[],
                query_terms=terms.split() if terms else [],
                answer_type=AnswerType(
                    coarse, None if fine == "-" else fine, float(confidence)
                ),
                classifier_source=source,
            )
        )
    return out
