"""Trainable expected-answer-type classifier.

Multinomial naive Bayes with add-alpha smoothing over simple question
features. Training is a closed-form count, so models are deterministic
and independent of example order.

Features for a question are a multiset of:
  - every lowercased token,
  - first2=<tok1>_<tok2>, the bigram of the first two tokens,
  - wh=<who|what|when|where|which|why|how|none>, first wh-word present,
  - len=<1-3|4-7|8+>, bucketed token count.

Model file format (magic QANUSNB1, versioned, deterministic ordering):

    QANUSNB1 1
    alpha <repr>
    space <coarse|coarse+fine>
    label <label> <example_count>
    feat <label> <feature> <count>

Only integer counts and alpha are stored; log-probabilities are
recomputed at load, so load(write(m)) reproduces the model exactly.
"""

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import QAError
from .taxonomy import AnswerType, parse_label
from .text import tokenize

MAGIC = "QANUSNB1"
VERSION = 1

WH_WORDS = ("who", "what", "when", "where", "which", "why", "how")

COARSE_ONLY = "coarse"
COARSE_FINE = "coarse+fine"


class NoExamples(QAError):
    pass


class CorruptModel(QAError):
    pass


@dataclass(frozen=True)
class TrainingExample:
    label: str  # COARSE or COARSE:fine, validated against the taxonomy
    text: str

    def __post_init__(self):
        parse_label(self.label)


def extract_features(text: str) -> Counter:
    """Feature multiset for one question; see module docstring."""
    tokens = [t.surface for t in tokenize(text)]
    feats = Counter(tokens)
    if len(tokens) >= 2:
        feats[f"first2={tokens[0]}_{tokens[1]}"] += 1
    wh = next((t for t in tokens if t in WH_WORDS), "none")
    feats[f"wh={wh}"] += 1
    n = len(tokens)
    bucket = "1-3" if n <= 3 else "4-7" if n <= 7 else "8+"
    feats[f"len={bucket}"] += 1
    return feats


@dataclass
class ClassifierModel:
    alpha: float
    label_space: str  # COARSE_ONLY or COARSE_FINE
    example_counts: dict[str, int]
    feature_counts: dict[str, dict[str, int]]

    # Derived tables, rebuilt identically from the counts above.
    vocabulary: frozenset[str] = field(init=False, compare=False, repr=False)
    class_priors: dict[str, float] = field(init=False, compare=False, repr=False)
    term_log_likelihoods: dict[str, dict[str, float]] = field(
        init=False, compare=False, repr=False
    )
    unseen_log_likelihood: dict[str, float] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        vocab: set[str] = set()
        for counts in self.feature_counts.values():
            vocab.update(counts)
        self.vocabulary = frozenset(vocab)
        total_examples = sum(self.example_counts.values())
        self.class_priors = {
            label: math.log(n / total_examples)
            for label, n in self.example_counts.items()
        }
        # The +1 vocabulary slot reserves smoothed mass for unseen features,
        # keeping each class distribution normalized.
        v = len(self.vocabulary)
        self.term_log_likelihoods = {}
        self.unseen_log_likelihood = {}
        for label, counts in self.feature_counts.items():
            denom = sum(counts.values()) + self.alpha * (v + 1)
            self.term_log_likelihoods[label] = {
                f: math.log((c + self.alpha) / denom) for f, c in sorted(counts.items())
            }
            self.unseen_log_likelihood[label] = math.log(self.alpha / denom)

    @property
    def labels(self) -> list[str]:
        return sorted(self.example_counts)


def train_classifier(
    examples: list[TrainingExample],
    alpha: float = 1.0,
    label_space: str = COARSE_FINE,
) -> ClassifierModel:
    """Count features per label and build the smoothed model."""
    if alpha <= 0:
        raise ValueError(f"smoothing alpha must be positive, got {alpha}")
    if label_space not in (COARSE_ONLY, COARSE_FINE):
        raise ValueError(f"unknown label space: {label_space!r}")
    if not examples:
        raise NoExamples("no training examples")
    example_counts: dict[str, int] = {}
    feature_counts: dict[str, dict[str, int]] = {}
    for ex in examples:
        label = ex.label.split(":")[0] if label_space == COARSE_ONLY else ex.label
        example_counts[label] = example_counts.get(label, 0) + 1
        bucket = feature_counts.setdefault(label, {})
        for feat, n in extract_features(ex.text).items():
            bucket[feat] = bucket.get(feat, 0) + n
    return ClassifierModel(alpha, label_space, example_counts, feature_counts)


def posterior(model: ClassifierModel, text: str) -> dict[str, float]:
    """Softmax-normalized label posterior for one question."""
    feats = extract_features(text)
    scores: dict[str, float] = {}
    for label in model.labels:
        table = model.term_log_likelihoods[label]
        unseen = model.unseen_log_likelihood[label]
        s = model.class_priors[label]
        for feat, n in feats.items():
            s += n * table.get(feat, unseen)
        scores[label] = s
    top = max(scores.values())
    exps = {label: math.exp(s - top) for label, s in scores.items()}
    z = sum(exps.values())
    return {label: e / z for label, e in exps.items()}


def classify_question(model: ClassifierModel, text: str) -> AnswerType:
    """Argmax label with its posterior; ties break lexicographically."""
    post = posterior(model, text)
    best = min(post, key=lambda label: (-post[label], label))
    coarse, fine = parse_label(best)
    return AnswerType(coarse, fine, post[best])


def write_model(model: ClassifierModel, path) -> None:
    lines = [f"{MAGIC} {VERSION}", f"alpha {model.alpha!r}", f"space {model.label_space}"]
    for label in sorted(model.example_counts):
        lines.append(f"label {label} {model.example_counts[label]}")
    for label in sorted(model.feature_counts):
        for feat, n in sorted(model.feature_counts[label].items()):
            lines.append(f"feat {label} {feat} {n}")
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def load_model(path) -> ClassifierModel:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise CorruptModel("empty model file")
    header = lines[0].split(" ")
    if header[0] != MAGIC:
        raise CorruptModel(f"bad magic: {lines[0][:16]!r}")
    if len(header) != 2 or header[1] != str(VERSION):
        raise CorruptModel(f"model version {header[1:]} unsupported")
    alpha: float | None = None
    label_space: str | None = None
    example_counts: dict[str, int] = {}
    feature_counts: dict[str, dict[str, int]] = {}
    try:
        for line in lines[1:]:
            kind, _, rest = line.partition(" ")
            if kind == "alpha":
                alpha = float(rest)
            elif kind == "space":
                label_space = rest
            elif kind == "label":
                label, n = rest.rsplit(" ", 1)
                example_counts[label] = int(n)
                feature_counts.setdefault(label, {})
            elif kind == "feat":
                label, feat, n = rest.split(" ")
                feature_counts.setdefault(label, {})[feat] = int(n)
            else:
                raise CorruptModel(f"unknown record kind {kind!r}")
    except ValueError as exc:
        raise CorruptModel(f"malformed model record: {exc}") from exc
    if alpha is None or label_space is None or not example_counts:
        raise CorruptModel("incomplete model file")
    return ClassifierModel(alpha, label_space, example_counts, feature_counts)


def parse_training_file(path) -> tuple[list[TrainingExample], list[str]]:
    """Read `LABEL question text` lines; invalid lines go to the rejects list."""
    examples: list[TrainingExample] = []
    rejected: list[str] = []
    for line_no, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        label, _, question = line.partition(" ")
        if not question.strip():
            rejected.append(f"line {line_no}: missing question text")
            continue
        try:
            examples.append(TrainingExample(label, question.strip()))
        except QAError as exc:
            rejected.append(f"line {line_no}: {exc}")
    return examples, rejected
