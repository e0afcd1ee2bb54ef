"""Gold-standard judging and factoid accuracy.

Gold files follow the answer-patterns convention: one `qid pattern` per
line, with repeated qids supplying alternative patterns. An answer is
correct when any of its qid's patterns matches anywhere in the answer
string, case-insensitively. Accuracy is correct answers over the total
number of gold questions; gold questions the system never answered
count as wrong.
"""

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import QAError
from .extraction import AnswerRecord

NIL = "NIL"


class BadPattern(QAError):
    def __init__(self, qid, pattern, reason):
        super().__init__(f"bad pattern for {qid}: {pattern!r} ({reason})")
        self.qid = qid
        self.pattern = pattern


class EmptyGold(QAError):
    pass


class EmptyTestSet(QAError):
    pass


class QidMismatch(QAError):
    pass


@dataclass
class GoldPattern:
    qid: str
    patterns: list[str]


@dataclass(frozen=True)
class JudgedAnswer:
    qid: str
    given: str          # answer string, NIL, or "-" for never answered
    correct: bool
    matched_pattern: str | None = None


@dataclass
class EvaluationReport:
    total_questions: int
    correct_count: int
    per_question: list[JudgedAnswer]
    unanswered_qids: list[str]
    ignored_answers: int = 0

    @property
    def accuracy(self) -> float:
        return self.correct_count / self.total_questions


def load_gold(path) -> dict[str, GoldPattern]:
    """Patterns grouped by qid, compile-checked eagerly, file order kept."""
    gold: dict[str, GoldPattern] = {}
    for line_no, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        qid, _, pattern = line.partition(" ")
        qid, pattern = qid.strip(), pattern.strip()
        if not qid or not pattern:
            raise BadPattern(qid or f"line {line_no}", pattern, "missing qid or pattern")
        try:
            re.compile(pattern, re.IGNORECASE)
        except re.error as exc:
            raise BadPattern(qid, pattern, str(exc)) from exc
        gold.setdefault(qid, GoldPattern(qid, [])).patterns.append(pattern)
    if not gold:
        raise EmptyGold("gold file contains no patterns")
    return gold


def judge(answer: AnswerRecord, gold: GoldPattern) -> JudgedAnswer:
    """Unanchored, case-insensitive pattern match over the answer string."""
    if answer.qid != gold.qid:
        raise QidMismatch(f"answer qid {answer.qid} vs gold qid {gold.qid}")
    if answer.answer is None:
        # NIL is wrong unless the gold standard literally expects NIL.
        for pattern in gold.patterns:
            if pattern == NIL:
                return JudgedAnswer(answer.qid, NIL, True, pattern)
        return JudgedAnswer(answer.qid, NIL, False)
    for pattern in gold.patterns:
        if re.search(pattern, answer.answer, re.IGNORECASE):
            return JudgedAnswer(answer.qid, answer.answer, True, pattern)
    return JudgedAnswer(answer.qid, answer.answer, False)


def accuracy(judgments: list[JudgedAnswer], total_gold: int) -> float:
    if total_gold <= 0:
        raise EmptyTestSet("no gold questions to score against")
    return sum(1 for j in judgments if j.correct) / total_gold


def evaluate_answers(
    answers: list[AnswerRecord], gold: dict[str, GoldPattern]
) -> EvaluationReport:
    """Judge every gold question, in gold-file order."""
    if not gold:
        raise EmptyTestSet("no gold questions to score against")
    by_qid = {a.qid: a for a in answers}
    per_question: list[JudgedAnswer] = []
    unanswered: list[str] = []
    for qid, pattern in gold.items():
        record = by_qid.get(qid)
        if record is None:
            unanswered.append(qid)
            per_question.append(JudgedAnswer(qid, "-", False))
        else:
            per_question.append(judge(record, pattern))
    correct = sum(1 for j in per_question if j.correct)
    ignored = sum(1 for a in answers if a.qid not in gold)
    return EvaluationReport(len(gold), correct, per_question, unanswered, ignored)


def format_report(report: EvaluationReport) -> str:
    """Deterministic human-readable report text."""
    lines = [
        f"accuracy = {report.correct_count / report.total_questions:.3f} "
        f"({report.correct_count}/{report.total_questions})",
        f"total = {report.total_questions}",
        f"correct = {report.correct_count}",
        f"unanswered = {len(report.unanswered_qids)}",
        f"ignored = {report.ignored_answers}",
        "",
    ]
    for j in report.per_question:
        verdict = "CORRECT" if j.correct else "WRONG"
        given = j.given.replace("\t", " ").replace("\n", " ")
        line = f"{j.qid}\t{verdict}\t{given}"
        if j.matched_pattern is not None:
            line += f"\t[{j.matched_pattern}]"
        lines.append(line)
    return "".join(line + "\n" for line in lines)


def write_report(report: EvaluationReport, path) -> None:
    Path(path).write_text(format_report(report), encoding="utf-8")
