import pytest

from qapipe.classifier import TrainingExample, train_classifier
from qapipe.questions import (
    DuplicateQid,
    MalformedQuestion,
    Question,
    analyze,
    load_analyses,
    parse_questions,
    rule_fallback,
    write_analyses,
)
from qapipe.stopwords import STOPWORDS


def test_qline_three_questions(tmp_path):
    path = tmp_path / "q.txt"
    path.write_text("q1\tWho did it?\nq2\tWhere was it?\nq3\tWhen was it?\n", encoding="utf-8")
    qs = parse_questions(path, "qline")
    assert [q.qid for q in qs] == ["q1", "q2", "q3"]
    assert all(q.target is None for q in qs)


def test_qline_duplicate_qid_fatal(tmp_path):
    path = tmp_path / "q.txt"
    path.write_text("q1\tfirst?\nq1\tsecond?\n", encoding="utf-8")
    with pytest.raises(DuplicateQid):
        parse_questions(path, "qline")


def test_qline_malformed_skip_and_report(tmp_path):
    path = tmp_path / "q.txt"
    path.write_text("q1\tfine?\nno tab here\nq2\talso fine?\n", encoding="utf-8")
    rejects: list[MalformedQuestion] = []
    qs = parse_questions(path, "qline", rejects)
    assert [q.qid for q in qs] == ["q1", "q2"]
    assert len(rejects) == 1 and rejects[0].location == "line 2"


def test_trec_xml_target_carried(tmp_path):
    path = tmp_path / "q.xml"
    path.write_text(
        '<target text="Mozart">\n'
        '<q id="216.1">When was he born?</q>\n'
        '<q id="216.2">Where did he die?</q>\n'
        "</target>\n",
        encoding="utf-8",
    )
    qs = parse_questions(path, "trec-xml")
    assert [q.qid for q in qs] == ["216.1", "216.2"]
    assert all(q.target == "Mozart" for q in qs)


def test_trec_xml_missing_id_rejected(tmp_path):
    path = tmp_path / "q.xml"
    path.write_text(
        '<target text="X"><q id="">Empty id?</q><q id="1.1">Good?</q></target>',
        encoding="utf-8",
    )
    rejects: list[MalformedQuestion] = []
    qs = parse_questions(path, "trec-xml", rejects)
    assert [q.qid for q in qs] == ["1.1"]
    assert len(rejects) == 1


@pytest.mark.parametrize(
    "text,expected",
    [
        ("When was the treaty signed?", "NUM:date"),
        ("How many ships sank?", "NUM:count"),
        ("How much did it cost?", "NUM:count"),
        ("Who led the revolt?", "HUM:ind"),
        ("Where is the citadel?", "LOC:other"),
        ("In what year did it end?", "NUM:date"),
        ("Which year saw the flood?", "NUM:date"),
    ],
)
def test_rule_fallback_table(text, expected):
    assert rule_fallback(text).label == expected


def test_rule_fallback_none_for_other_questions():
    assert rule_fallback("Name the ships.") is None
    assert rule_fallback("What is a glacier?") is None


@pytest.fixture
def tiny_model():
    return train_classifier(
        [
            TrainingExample("LOC:other", "where is the deep harbor located"),
            TrainingExample("NUM:date", "when was the wall built"),
            TrainingExample("HUM:ind", "who carved the statue"),
        ]
    )


def test_analyze_query_terms(tiny_model):
    analysis = analyze(Question("q1", "What is the capital of France?"), tiny_model, STOPWORDS)
    assert analysis.query_terms == ["capital", "france"]


def test_analyze_appends_target_terms(tiny_model):
    analysis = analyze(
        Question("q2", "When was he born?", target="Mozart"), tiny_model, STOPWORDS
    )
    assert analysis.query_terms == ["born", "mozart"]
    assert analysis.answer_type.label == "NUM:date"


def test_analyze_rule_overrides_low_confidence(tiny_model):
    # Three single-example classes leave the model unsure on novel words,
    # so the wh-rule must take over.
    analysis = analyze(Question("q3", "Who discovered penicillin?"), tiny_model, STOPWORDS)
    assert analysis.answer_type.label == "HUM:ind"
    assert analysis.classifier_source in ("rule", "model")
    if analysis.classifier_source == "rule":
        assert analysis.answer_type.confidence == 1.0


def test_analyze_without_model_uses_rule_then_default():
    ruled = analyze(Question("q4", "Where is the bridge?"), None, STOPWORDS)
    assert ruled.classifier_source == "rule"
    assert ruled.answer_type.label == "LOC:other"
    default = analyze(Question("q5", "Name the ships involved."), None, STOPWORDS)
    assert default.classifier_source == "default"
    assert default.answer_type.coarse == "DESC"


def test_analyze_all_stopwords_without_target(tiny_model):
    analysis = analyze(Question("q6", "What is it?"), tiny_model, STOPWORDS)
    assert analysis.query_terms == []


def test_analyze_all_stopwords_with_target(tiny_model):
    analysis = analyze(Question("q7", "What is it?", target="Vesuvius"), tiny_model, STOPWORDS)
    assert analysis.query_terms == ["vesuvius"]


def test_analyze_dedup_preserves_order(tiny_model):
    analysis = analyze(
        Question("q8", "Treaty after treaty, the treaty held?"), tiny_model, STOPWORDS
    )
    assert analysis.query_terms == ["treaty", "held"]


def test_analyze_idempotent(tiny_model):
    q = Question("q9", "Where was the amber foundry located?")
    a1 = analyze(q, tiny_model, STOPWORDS)
    a2 = analyze(q, tiny_model, STOPWORDS)
    assert a1.query_terms == a2.query_terms
    assert a1.answer_type == a2.answer_type


def test_analysis_artifact_round_trip(tmp_path, tiny_model):
    questions = [
        Question("q1", "Who carved the statue?"),
        Question("q2", "What is it?"),
    ]
    analyses = [analyze(q, tiny_model, STOPWORDS) for q in questions]
    path = tmp_path / "analysis.txt"
    write_analyses(analyses, path)
    loaded = load_analyses(path)
    assert [a.qid for a in loaded] == ["q1", "q2"]
    assert loaded[0].query_terms == analyses[0].query_terms
    assert loaded[0].answer_type.label == analyses[0].answer_type.label
    assert loaded[1].query_terms == []


PLANTED_GOLDEN_ANALYSES = """\
q01\tcrimson frigate completed\tNUM\tdate\t0.982267\tmodel
q02\tamber treaty completed\tNUM\tdate\t0.982267\tmodel
q03\tobsidian observatory completed\tNUM\tdate\t0.982267\tmodel
q04\tcobalt aqueduct completed\tNUM\tdate\t0.982267\tmodel
q05\temerald foundry completed\tNUM\tdate\t0.982267\tmodel
q06\tmany cannons scarlet citadel carry\tNUM\tcount\t0.991608\tmodel
q07\tmany cannons violet archive carry\tNUM\tcount\t0.991608\tmodel
q08\tmany cannons bronze monastery carry\tNUM\tcount\t0.991608\tmodel
q09\tmany cannons copper viaduct carry\tNUM\tcount\t0.991608\tmodel
q10\tmany cannons jade granary carry\tNUM\tcount\t0.991608\tmodel
q11\tfounded onyx lighthouse\tHUM\tind\t0.985585\tmodel
q12\tfounded pearl armory\tHUM\tind\t0.985585\tmodel
q13\tfounded sable chapel\tHUM\tind\t0.985585\tmodel
q14\tfounded teal garrison\tHUM\tind\t0.985585\tmodel
q15\tfounded umber windmill\tHUM\tind\t0.985585\tmodel
q16\tochre bastion located\tLOC\tother\t0.922482\tmodel
q17\tindigo atelier located\tLOC\tother\t0.922482\tmodel
q18\tmaroon cannery located\tLOC\tother\t0.922482\tmodel
q19\tsepia seminary located\tLOC\tother\t0.922482\tmodel
q20\tviridian arsenal located\tLOC\tother\t0.922482\tmodel
"""


def test_planted_fixture_analyses_match_frozen_golden(tmp_path):
    """Generated once, reviewed by hand, frozen; guards analysis drift."""
    from qapipe.classifier import parse_training_file, train_classifier
    from qapipe.synth import write_fixture

    paths = write_fixture(tmp_path)
    examples, _ = parse_training_file(paths["train"])
    model = train_classifier(examples)
    qs = parse_questions(paths["questions"], "qline")
    out = tmp_path / "analysis.txt"
    write_analyses([analyze(q, model, STOPWORDS) for q in qs], out)
    assert out.read_text(encoding="utf-8") == PLANTED_GOLDEN_ANALYSES


def test_classifier_tie_breaks_lexicographically():
    from qapipe.classifier import TrainingExample, classify_question, train_classifier

    model = train_classifier(
        [
            TrainingExample("LOC:city", "alpha beta"),
            TrainingExample("HUM:ind", "alpha beta"),
        ]
    )
    # Mirrored classes give equal posteriors on any input; the tie must
    # fall to the lexicographically smaller label.
    assert classify_question(model, "alpha beta").label == "HUM:ind"
    assert classify_question(model, "unrelated words").label == "HUM:ind"
