import pytest
from pathlib import Path

import genotag
from genotag.core.tags import Tag, load_tagset_map, make_genotype
from genotag.corpus_io import GoldToken, read_training_corpus
from genotag.morphology.analyze_tokens import Lexicon, load_lexicon
from genotag.statistics.decision_tables import save_model, train


@pytest.fixture(scope="session")
def data_dir():
    """Directory of the resources shipped with the package."""
    return Path(genotag.__file__).parent / "data"

@pytest.fixture(scope="session")
def lexicon_path(data_dir):
    return data_dir / "lexicon.txt"

@pytest.fixture(scope="session")
def rules_path(data_dir):
    return data_dir / "rules.txt"

@pytest.fixture(scope="session")
def tagset_map_path(data_dir):
    return data_dir / "tagset_map.tsv"

@pytest.fixture(scope="session")
def desk_corpus_path(data_dir):
    """Small hand-tagged corpus consistent with the shipped lexicon."""
    return data_dir / "desk_corpus.tsv"

@pytest.fixture(scope="session")
def sample_text_path(data_dir):
    return data_dir / "sample.txt"

@pytest.fixture(scope="session")
def lexicon(lexicon_path):
    return load_lexicon(lexicon_path)

@pytest.fixture(scope="session")
def tagset_map(tagset_map_path):
    return load_tagset_map(tagset_map_path)

@pytest.fixture(scope="session")
def desk_model(desk_corpus_path, lexicon):
    """Model trained on the desk corpus with the full tagset."""
    return train(read_training_corpus(desk_corpus_path), lexicon)

@pytest.fixture
def desk_model_path(tmp_path, desk_model):
    path = tmp_path / "desk.model"
    save_model(desk_model, path)
    return path

@pytest.fixture
def write_file(tmp_path):
    """Write ``content`` to ``tmp_path / name`` and return the path."""
    def _write(name: str, content: str) -> Path:
        path = tmp_path / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
        return path
    return _write

@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep GENOTAG_* variables of the developer's shell out of the tests."""
    for var in ("GENOTAG_LEXICON", "GENOTAG_RULES", "GENOTAG_MODEL", "GENOTAG_TAGSET_MAP",
                "GENOTAG_SCHEDULE", "GENOTAG_LOG_LEVEL"):
        monkeypatch.delenv(var, raising=False)

# Configure pytest-asyncio
def pytest_configure(config):
    """Configure pytest-asyncio to use function scope by default."""
    config.option.asyncio_mode = "auto"


MOYENNE = ("jfs", "nfs", "v1s", "v2s", "v3s")

@pytest.fixture(scope="session")
def moyenne_genotype():
    """Small-tagset genotype of 'moyenne'."""
    return make_genotype(list(MOYENNE))

@pytest.fixture(scope="session")
def moyenne_lexicon():
    return Lexicon.from_tags({
        "moyenne": MOYENNE,
        "homme": ["nms"],
        "valeur": ["nfs"],
        "teneur": ["nfs", "nms"],
        "la": ["rf"],
        "il": ["b"],
        ".": ["x"],
    })

@pytest.fixture(scope="session")
def moyenne_model(moyenne_lexicon):
    """65 occurrences of the genotype of 'moyenne': 27 v3s, 23 jfs, 15 nfs.

    Contexts: jfs after a feminine noun (bigram, 20/20), jfs after a noun of
    either gender then a period (trigram, 3/3, too weak for B:75), v3s after
    a masculine noun and nfs after a feminine article.
    """
    def sentence(*pairs):
        return [GoldToken(surface, Tag(gold)) for surface, gold in pairs]

    corpus = []
    corpus += [sentence(("homme", "nms"), ("moyenne", "v3s"), (".", "x"))] * 27
    corpus += [sentence(("valeur", "nfs"), ("moyenne", "jfs"), (".", "x"))] * 20
    corpus += [sentence(("teneur", "nfs"), ("moyenne", "jfs"), (".", "x"))] * 3
    corpus += [sentence(("la", "rf"), ("moyenne", "nfs"), (".", "x"))] * 15
    return train(corpus, moyenne_lexicon)
