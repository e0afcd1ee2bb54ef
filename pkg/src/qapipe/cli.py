"""Command-line entry point.

One binary, one subcommand per invocation:

    qapipe index --config CFG             build the inverted index
    qapipe train-classifier ...           train the answer-type model
    qapipe process-questions --config CFG analyze questions
    qapipe answer --config CFG            retrieve and extract answers
    qapipe evaluate --config CFG          judge answers against gold
    qapipe run-all --config CFG           stages 1-3, plus 4 when gold is set
    qapipe ask --config CFG [QUESTION]    one-shot or stdin REPL answering
    qapipe stats --config CFG             index and model statistics

Exit codes: 0 success, 1 usage or validation error, 2 runtime failure.
Diagnostics go to standard error only.
"""

import argparse
import sys

from . import index as index_mod
from .classifier import load_model, parse_training_file, train_classifier, write_model
from .config import load_config
from .errors import QAError, UsageError
from .extraction import answer_question
from .pipeline import StageKind, run_pipeline
from .questions import Question, analyze
from .stages import default_registry
from .stopwords import STOPWORDS

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that reports usage problems with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="qapipe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("index", "process-questions", "answer", "evaluate", "run-all", "stats"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)

    p = sub.add_parser("train-classifier")
    p.add_argument("--train-file", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--coarse-only", action="store_true")

    p = sub.add_parser("ask")
    p.add_argument("--config", required=True)
    p.add_argument("question", nargs="*")
    return parser


def _run_stages(config_path: str, stages: list[StageKind]) -> int:
    config = load_config(config_path)
    manifest = run_pipeline(config, default_registry(), stages)
    for run in manifest.stages_run:
        print(f"{run.stage.value}: {run.detail}")
    return EXIT_OK


def cmd_index(args) -> int:
    return _run_stages(args.config, [StageKind.INFO_SOURCE_PREP])


def cmd_process_questions(args) -> int:
    return _run_stages(args.config, [StageKind.QUESTION_PROCESSING])


def cmd_answer(args) -> int:
    return _run_stages(args.config, [StageKind.ANSWER_RETRIEVAL])


def cmd_evaluate(args) -> int:
    return _run_stages(args.config, [StageKind.EVALUATION])


def cmd_run_all(args) -> int:
    config = load_config(args.config)
    stages = [
        StageKind.INFO_SOURCE_PREP,
        StageKind.QUESTION_PROCESSING,
        StageKind.ANSWER_RETRIEVAL,
    ]
    if config.gold_path:
        stages.append(StageKind.EVALUATION)
    manifest = run_pipeline(config, default_registry(), stages)
    for run in manifest.stages_run:
        print(f"{run.stage.value}: {run.detail}")
    return EXIT_OK


def cmd_train_classifier(args) -> int:
    examples, rejected = parse_training_file(args.train_file)
    if not examples:
        raise UsageError("training file has no valid examples")
    total = len(examples) + len(rejected)
    if len(rejected) > 0.01 * total:
        for line in rejected:
            print(f"rejected: {line}", file=sys.stderr)
        raise UsageError(
            f"{len(rejected)} of {total} training lines malformed (over 1% tolerance)"
        )
    for line in rejected:
        print(f"rejected: {line}", file=sys.stderr)
    space = "coarse" if args.coarse_only else "coarse+fine"
    if args.alpha <= 0:
        raise UsageError("--alpha must be positive")
    model = train_classifier(examples, alpha=args.alpha, label_space=space)
    write_model(model, args.out)
    print(f"labels={len(model.example_counts)} vocab={len(model.vocabulary)}")
    return EXIT_OK


def cmd_ask(args) -> int:
    config = load_config(args.config)
    try:
        idx = index_mod.load_index(config.index_path)
    except FileNotFoundError as exc:
        raise UsageError(f"index not found: {config.index_path}") from exc
    model = None
    if config.classifier_model_path:
        try:
            model = load_model(config.classifier_model_path)
        except FileNotFoundError as exc:
            raise UsageError(f"model not found: {config.classifier_model_path}") from exc

    def respond(qid: str, text: str) -> None:
        analysis = analyze(Question(qid, text), model, STOPWORDS)
        record = answer_question(
            idx,
            analysis,
            k=config.int_param("retrieval.k"),
            max_passages=config.int_param("retrieval.max_passages"),
            coverage_weight=config.float_param("weights.coverage"),
            proximity_weight=config.float_param("weights.proximity"),
            redundancy_weight=config.float_param("weights.redundancy"),
        )
        answer = record.answer if record.answer is not None else "NIL"
        doc = record.supporting_doc if record.supporting_doc is not None else "-"
        print(f"{answer}\t{doc}\t{record.final_score:g}")

    if args.question:
        respond("q1", " ".join(args.question))
    else:
        for i, line in enumerate(sys.stdin, start=1):
            if line.strip():
                respond(f"q{i}", line.strip())
    return EXIT_OK


def cmd_stats(args) -> int:
    import os

    config = load_config(args.config)
    found = False
    if os.path.isfile(config.index_path):
        st = index_mod.load_index(config.index_path).stats()
        print(
            f"index: docs={st.doc_count} terms={st.distinct_terms} "
            f"postings={st.total_postings} avg_len={st.avg_doc_length:.2f}"
        )
        found = True
    if config.classifier_model_path and os.path.isfile(config.classifier_model_path):
        model = load_model(config.classifier_model_path)
        print(
            f"model: labels={len(model.example_counts)} vocab={len(model.vocabulary)} "
            f"alpha={model.alpha:g} space={model.label_space}"
        )
        found = True
    if not found:
        raise UsageError("neither index nor model file exists yet")
    return EXIT_OK


_COMMANDS = {
    "index": cmd_index,
    "train-classifier": cmd_train_classifier,
    "process-questions": cmd_process_questions,
    "answer": cmd_answer,
    "evaluate": cmd_evaluate,
    "run-all": cmd_run_all,
    "ask": cmd_ask,
    "stats": cmd_stats,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QAError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as exc:  # never panic to the shell
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    raise SystemExit(main())
