import random
import subprocess
import sys
from pathlib import Path

import pytest

SRC_DIR = Path(__file__).resolve().parent.parent / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))


TREC_SGML_SAMPLE = """<DOC>
<DOCNO> DOC-A </DOCNO>
<HEADLINE> Treaty signed in Rome </HEADLINE>
<TEXT>
<P>
The treaty was signed on 12 January 2004 in Rome.
</P>
<P>
Delegates praised the accord as historic.
</P>
</TEXT>
</DOC>
<DOC>
<DOCNO> DOC-B </DOCNO>
<TEXT>
Gordon Moore and Robert Noyce founded Intel. The company grew quickly.
</TEXT>
</DOC>
"""


@pytest.fixture
def sgml_corpus(tmp_path):
    path = tmp_path / "corpus.sgml"
    path.write_text(TREC_SGML_SAMPLE, encoding="utf-8")
    return path


def make_record_corpus(path: Path, docs: dict[str, str]) -> Path:
    lines = [f"{doc_id}\t\t{text}" for doc_id, text in docs.items()]
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path


def random_docs(n_docs: int, seed: int, vocab_size: int = 60) -> dict[str, str]:
    """Random filler documents for the counting and ranking oracles."""
    rng = random.Random(seed)
    vocab = [f"w{i:02d}" for i in range(vocab_size)]
    docs = {}
    for d in range(n_docs):
        words = [rng.choice(vocab) for _ in range(rng.randint(20, 60))]
        docs[f"R{d:03d}"] = " ".join(words) + "."
    return docs


def run_cli(*args, cwd=None, stdin=None):
    env = dict(PYTHONPATH=str(SRC_DIR))
    import os

    env.update({k: v for k, v in os.environ.items() if k != "PYTHONPATH"})
    env["PYTHONPATH"] = str(SRC_DIR) + os.pathsep + os.environ.get("PYTHONPATH", "")
    return subprocess.run(
        [sys.executable, "-m", "qapipe.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
        input=stdin,
        env=env,
    )


@pytest.fixture(scope="session")
def planted_dir(tmp_path_factory):
    """Planted-answer benchmark directory with a trained model."""
    from qapipe.synth import write_fixture

    out = tmp_path_factory.mktemp("planted")
    write_fixture(out)
    result = run_cli(
        "train-classifier",
        "--train-file", "train.txt",
        "--out", "model.nb",
        cwd=out,
    )
    assert result.returncode == 0, result.stderr
    return out
