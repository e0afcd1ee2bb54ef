"""Synthetic planted-answer corpus generator.

Builds a self-contained benchmark directory: a record-lines corpus in
which each factoid question's answer appears adjacent to that question's
query terms in exactly one document, plus the questions, gold patterns,
a classifier training file, and a ready-to-run config. Everything is
deterministic for a given seed, so generated fixtures are reproducible
byte for byte.

Usage:
    python -m qapipe.synth OUT_DIR
"""

import random
from pathlib import Path

_ADJECTIVES = (
    "crimson", "amber", "obsidian", "cobalt", "emerald",
    "scarlet", "violet", "bronze", "copper", "jade",
    "onyx", "pearl", "sable", "teal", "umber",
    "ochre", "indigo", "maroon", "sepia", "viridian",
)
_NOUNS = (
    "frigate", "treaty", "observatory", "aqueduct", "foundry",
    "citadel", "archive", "monastery", "viaduct", "granary",
    "lighthouse", "armory", "chapel", "garrison", "windmill",
    "bastion", "atelier", "cannery", "seminary", "arsenal",
)
_MONTHS = ("January", "March", "April", "June", "September")
_FIRST_NAMES = ("Marcus", "Helena", "Tobias", "Ingrid", "Casper")
_LAST_NAMES = ("Greenfield", "Vossberg", "Lindqvist", "Marchetti", "Okafor")
_PLACES = ("Porto Velano", "Monte Arduro", "Villa Crestona", "Lago Ferrin", "Cabo Miralto")

# Filler vocabulary avoids stopwords, digits, month names, and every word
# used by the planted questions, so planted documents dominate retrieval.
_FILLER = (
    "meadow", "stone", "river", "harvest", "lantern", "wagon", "orchard",
    "miller", "fable", "timber", "market", "cellar", "loom", "anvil",
    "barley", "fennel", "grove", "hearth", "kiln", "plough", "quarry",
    "reed", "saddle", "thatch", "vellum", "weir", "yarrow", "bramble",
    "cider", "dusk", "ember", "fleece", "gable", "heather", "inkwell",
    "juniper", "kestrel", "linen", "mortar", "nettle",
)

TRAINING_LINES = (
    "NUM:date When did the revolution begin ?",
    "NUM:date When was the old bridge built ?",
    "NUM:date What year did the expedition return ?",
    "NUM:date When did the factory open its doors ?",
    "NUM:date What year was the charter signed ?",
    "NUM:date When was the first engine tested ?",
    "NUM:count How many students attend the academy ?",
    "NUM:count How many ships joined the convoy ?",
    "NUM:count How many bones are in the human hand ?",
    "NUM:count How many members sit on the council ?",
    "NUM:count How much grain does the silo hold ?",
    "NUM:count How many floors does the tower have ?",
    "NUM:money How much did the painting sell for ?",
    "NUM:money What is the fine for late returns ?",
    "NUM:perc What percentage of the forest burned ?",
    "HUM:ind Who invented the telephone ?",
    "HUM:ind Who founded the trading company ?",
    "HUM:ind Who wrote the famous letters ?",
    "HUM:ind Who discovered the comet ?",
    "HUM:ind Who led the northern expedition ?",
    "HUM:ind Who designed the great dome ?",
    "HUM:gr What company builds the fastest engines ?",
    "HUM:gr What team won the tournament ?",
    "LOC:other Where is the national museum located ?",
    "LOC:other Where did the council meet ?",
    "LOC:other Where was the gold first found ?",
    "LOC:city What city hosts the spring festival ?",
    "LOC:city In what city was the composer born ?",
    "LOC:country What country exports the most tea ?",
    "LOC:mount What mountain overlooks the valley ?",
    "DESC:def What is photosynthesis ?",
    "DESC:def What is a glacier ?",
    "DESC:reason Why do leaves change color ?",
    "DESC:manner How does a siphon work ?",
    "DESC:desc What does the morning ritual involve ?",
    "ENTY:animal What animal sleeps standing up ?",
    "ENTY:color What color is a ripe olive ?",
    "ENTY:food What fruit grows on the baobab ?",
    "ENTY:lang What language is spoken in the highlands ?",
    "ENTY:sport What sport uses a shuttlecock ?",
    "ABBR:exp What does NASA stand for ?",
    "ABBR:exp What does UNESCO stand for ?",
    "ABBR:abb What is the abbreviation for kilometers ?",
)


def _filler_sentence(rng: random.Random) -> str:
    words = [rng.choice(_FILLER) for _ in range(rng.randint(6, 11))]
    words[0] = words[0].capitalize()
    return " ".join(words) + "."


def _planted_items(num_questions: int = 20):
    """(question, planted sentence, gold regex) triples, 4 answer shapes."""
    items = []
    for i in range(num_questions):
        adj, noun = _ADJECTIVES[i], _NOUNS[i]
        j = i % 5
        if i < 5:
            day, month, year = 3 + 5 * j, _MONTHS[j], 1871 + 7 * j
            question = f"When was the {adj} {noun} completed?"
            sentence = (
                f"The {adj} {noun} was completed on {day} {month} {year} "
                "after long seasons of labour."
            )
            gold = rf"{day}\s+{month}\s+{year}"
        elif i < 10:
            n = 14 + 9 * j
            question = f"How many cannons did the {adj} {noun} carry?"
            sentence = f"The {adj} {noun} was built to carry {n} cannons across the strait."
            gold = rf"\b{n}\b"
        elif i < 15:
            name = f"{_FIRST_NAMES[j]} {_LAST_NAMES[j]}"
            question = f"Who founded the {adj} {noun}?"
            sentence = f"The {adj} {noun} was founded by {name} during a harsh winter."
            gold = name.replace(" ", r"\s+")
        else:
            place = _PLACES[j]
            question = f"Where is the {adj} {noun} located?"
            sentence = (
                f"The {adj} {noun} is located near {place}, "
                "a quiet settlement by the water."
            )
            gold = place.replace(" ", r"\s+")
        items.append((question, sentence, gold))
    return items


def write_fixture(out_dir, num_docs: int = 100, seed: int = 7) -> dict[str, Path]:
    """Write corpus, questions, gold, training file, and config; return paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    items = _planted_items()
    if num_docs < 5 * len(items):
        raise ValueError("need at least 5 documents per planted question")

    planted_doc = {i * 5: i for i in range(len(items))}
    corpus_lines = []
    for d in range(num_docs):
        sentences = [_filler_sentence(rng) for _ in range(rng.randint(3, 5))]
        q = planted_doc.get(d)
        if q is not None:
            sentences.insert(rng.randint(1, len(sentences) - 1), items[q][1])
        corpus_lines.append(f"D{d:03d}\t\t{' '.join(sentences)}")

    paths = {
        "corpus": out / "corpus.tsv",
        "questions": out / "questions.txt",
        "gold": out / "gold.txt",
        "train": out / "train.txt",
        "config": out / "config.qa",
    }
    paths["corpus"].write_text("".join(l + "\n" for l in corpus_lines), encoding="utf-8")
    paths["questions"].write_text(
        "".join(f"q{i + 1:02d}\t{q}\n" for i, (q, _, _) in enumerate(items)),
        encoding="utf-8",
    )
    paths["gold"].write_text(
        "".join(f"q{i + 1:02d} {g}\n" for i, (_, _, g) in enumerate(items)),
        encoding="utf-8",
    )
    paths["train"].write_text("".join(l + "\n" for l in TRAINING_LINES), encoding="utf-8")
    paths["config"].write_text(
        "# generated planted-answer benchmark\n"
        "corpus_path = corpus.tsv\n"
        "index_path = index.qix\n"
        "questions_path = questions.txt\n"
        "classifier_model_path = model.nb\n"
        "answers_out_path = answers.txt\n"
        "gold_path = gold.txt\n"
        "report_out_path = report.txt\n"
        "corpus.format = record-lines\n"
        "questions.format = qline\n",
        encoding="utf-8",
    )
    return paths


def main(argv=None) -> int:
    import sys

    args = sys.argv[1:] if argv is None else argv
    if len(args) != 1:
        print("usage: python -m qapipe.synth OUT_DIR", file=sys.stderr)
        return 1
    paths = write_fixture(args[0])
    from .classifier import parse_training_file, train_classifier, write_model

    examples, _ = parse_training_file(paths["train"])
    write_model(train_classifier(examples), Path(args[0]) / "model.nb")
    print(f"fixture written to {args[0]} (train, corpus, questions, gold, config, model)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
