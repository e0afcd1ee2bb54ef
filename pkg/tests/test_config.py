import pytest

from qapipe.config import (
    MissingFile,
    ParseError,
    UnknownKey,
    load_config,
)
from qapipe.pipeline import StageKind, validate_config

MINIMAL = (
    "corpus_path = corpus.tsv\n"
    "index_path = index.qix\n"
    "questions_path = questions.txt\n"
    "answers_out_path = answers.txt\n"
)


def write_config(tmp_path, body, name="config.qa"):
    path = tmp_path / name
    path.write_text(body, encoding="utf-8")
    return path


def test_defaults_applied(tmp_path):
    config = load_config(write_config(tmp_path, MINIMAL))
    assert config.stage_params["retrieval.k"] == "50"
    assert config.stage_params["retrieval.max_passages"] == "20"
    assert config.stage_params["weights.coverage"] == "2.0"
    assert config.stage_params["weights.proximity"] == "1.0"
    assert config.stage_params["weights.redundancy"] == "0.5"
    assert config.stage_params["corpus.format"] == "trec-sgml"


def test_relative_paths_resolved_against_config_dir(tmp_path):
    config = load_config(write_config(tmp_path, MINIMAL))
    assert config.corpus_path == str(tmp_path / "corpus.tsv")
    assert config.stage_params["questions.analysis_out"] == str(tmp_path / "analysis.txt")


def test_unknown_key_rejected_at_load(tmp_path):
    path = write_config(tmp_path, MINIMAL + "retrieval.bogus = 1\n")
    with pytest.raises(UnknownKey) as exc:
        load_config(path)
    assert exc.value.key == "retrieval.bogus"


def test_missing_config_file(tmp_path):
    with pytest.raises(MissingFile):
        load_config(tmp_path / "nope.qa")


def test_parse_error_reports_line(tmp_path):
    path = write_config(tmp_path, MINIMAL + "not a key value line\n")
    with pytest.raises(ParseError) as exc:
        load_config(path)
    assert exc.value.line == 5


def test_duplicate_key_rejected(tmp_path):
    path = write_config(tmp_path, MINIMAL + "corpus_path = other.tsv\n")
    with pytest.raises(ParseError):
        load_config(path)


def test_comments_and_blanks_ignored(tmp_path):
    body = "# a comment\n\n" + MINIMAL + "# retrieval.k = 9\n"
    config = load_config(write_config(tmp_path, body))
    assert config.stage_params["retrieval.k"] == "50"


def test_nonexistent_questions_path_accepted_at_load(tmp_path):
    config = load_config(write_config(tmp_path, MINIMAL))
    assert config.questions_path.endswith("questions.txt")  # no existence check here


def codes(issues):
    return [i.code for i in issues]


def test_validate_missing_gold_only_when_evaluation_requested(tmp_path):
    (tmp_path / "corpus.tsv").write_text("d1\t\ttext\n", encoding="utf-8")
    config = load_config(write_config(tmp_path, MINIMAL))
    no_eval = validate_config(config, {StageKind.INFO_SOURCE_PREP})
    assert "MissingGoldPath" not in codes(no_eval)
    with_eval = validate_config(config, {StageKind.EVALUATION})
    assert "MissingGoldPath" in codes(with_eval)


def test_validate_bad_int_param(tmp_path):
    (tmp_path / "corpus.tsv").write_text("d1\t\ttext\n", encoding="utf-8")
    config = load_config(write_config(tmp_path, MINIMAL + "retrieval.k = abc\n"))
    issues = validate_config(config, {StageKind.INFO_SOURCE_PREP})
    bad = [i for i in issues if i.code == "BadParam"]
    assert len(bad) == 1
    assert "retrieval.k" in bad[0].detail and "integer" in bad[0].detail


def test_validate_all_good_is_empty(tmp_path):
    (tmp_path / "corpus.tsv").write_text("d1\t\ttext\n", encoding="utf-8")
    config = load_config(write_config(tmp_path, MINIMAL))
    assert validate_config(config, {StageKind.INFO_SOURCE_PREP}) == []


def test_validate_missing_corpus_file(tmp_path):
    config = load_config(write_config(tmp_path, MINIMAL))
    issues = validate_config(config, {StageKind.INFO_SOURCE_PREP})
    assert "MissingFile" in codes(issues)


def test_validate_artifacts_may_be_produced_in_run(tmp_path):
    (tmp_path / "corpus.tsv").write_text("d1\t\ttext\n", encoding="utf-8")
    (tmp_path / "questions.txt").write_text("q1\tWho?\n", encoding="utf-8")
    (tmp_path / "model.nb").write_text("QANUSNB1 1\nalpha 1.0\nspace coarse\nlabel HUM 1\n", encoding="utf-8")
    config = load_config(
        write_config(tmp_path, MINIMAL + "classifier_model_path = model.nb\n")
    )
    all_stages = {
        StageKind.INFO_SOURCE_PREP,
        StageKind.QUESTION_PROCESSING,
        StageKind.ANSWER_RETRIEVAL,
    }
    assert validate_config(config, all_stages) == []
    # Index artifact missing and its producer not requested -> a real issue.
    partial = validate_config(config, {StageKind.ANSWER_RETRIEVAL})
    assert "MissingFile" in codes(partial)


def test_validate_model_required_for_question_processing(tmp_path):
    (tmp_path / "questions.txt").write_text("q1\tWho?\n", encoding="utf-8")
    config = load_config(write_config(tmp_path, MINIMAL))
    issues = validate_config(config, {StageKind.QUESTION_PROCESSING})
    assert "MissingModelPath" in codes(issues)


def test_digest_deterministic_and_sensitive(tmp_path):
    c1 = load_config(write_config(tmp_path, MINIMAL, "a.qa"))
    c2 = load_config(write_config(tmp_path, MINIMAL, "b.qa"))
    assert c1.digest() == c2.digest()
    c3 = load_config(write_config(tmp_path, MINIMAL + "retrieval.k = 9\n", "c.qa"))
    assert c3.digest() != c1.digest()


def test_typed_param_accessors(tmp_path):
    config = load_config(write_config(tmp_path, MINIMAL + "retrieval.k = 7\n"))
    assert config.int_param("retrieval.k") == 7
    assert config.float_param("weights.coverage") == pytest.approx(2.0)


def test_missing_required_path_rejected(tmp_path):
    body = "corpus_path = c.tsv\nindex_path = i.qix\nquestions_path = q.txt\n"
    with pytest.raises(ParseError):
        load_config(write_config(tmp_path, body))


def test_gazetteer_params_resolved_and_validated(tmp_path):
    (tmp_path / "corpus.tsv").write_text("d1\t\ttext\n", encoding="utf-8")
    body = MINIMAL + "extract.persons = people.txt\n"
    config = load_config(write_config(tmp_path, body))
    assert config.stage_params["extract.persons"] == str(tmp_path / "people.txt")

    # Missing gazetteer only matters when answer retrieval is requested.
    assert "MissingFile" not in codes(validate_config(config, {StageKind.INFO_SOURCE_PREP}))
    issues = validate_config(config, {StageKind.ANSWER_RETRIEVAL})
    assert any(i.code == "MissingFile" and "people" in i.detail for i in issues)

    (tmp_path / "people.txt").write_text("Maria Voss\n", encoding="utf-8")
    issues = validate_config(config, {StageKind.INFO_SOURCE_PREP})
    assert issues == []
