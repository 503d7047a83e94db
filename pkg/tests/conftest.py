import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from synthdata import make_dirichlet_corpora, make_family_corpora  # noqa: E402

SAMPLES = Path(__file__).resolve().parent.parent / "src" / "glossotype" / "data" / "samples"


@pytest.fixture(scope="session")
def english_raw_path() -> Path:
    return SAMPLES / "en" / "raw.txt"


@pytest.fixture(scope="session")
def english_tagged_path() -> Path:
    return SAMPLES / "en" / "tagged.conllu"


@pytest.fixture(scope="session")
def dirichlet_fixture(tmp_path_factory):
    """5 synthetic languages with distinct tri-gram distributions (tagged)."""
    root = tmp_path_factory.mktemp("dirichlet5")
    codes, dists = make_dirichlet_corpora(root)
    return root, codes, dists


@pytest.fixture(scope="session")
def family_fixture(tmp_path_factory):
    """3 families x 3 languages, raw + tagged, family-correlated."""
    root = tmp_path_factory.mktemp("families")
    family_of = make_family_corpora(root)
    return root, family_of
