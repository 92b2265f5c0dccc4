"""
Shared fixtures.
"""
import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)

from data import corpus  # noqa: E402
from src.finalg import product_ring, zmod  # noqa: E402
from src.groupoid import standard_constructions  # noqa: E402

DATA_DIR = os.path.join(ROOT, "data")


@pytest.fixture
def data_path():
    def _path(name):
        return os.path.join(DATA_DIR, name)
    return _path


@pytest.fixture(scope="session")
def z2_group():
    return standard_constructions("one_object_group", {"m": 2})


@pytest.fixture(scope="session")
def pair12():
    return standard_constructions("pair", {"I": ["1", "2"]})


@pytest.fixture(scope="session")
def z6():
    return zmod(6)


@pytest.fixture(scope="session")
def z2xz2():
    return product_ring(zmod(2), zmod(2))


@pytest.fixture(scope="session")
def example_graph():
    return corpus.example_graph()


@pytest.fixture(scope="session")
def actions():
    return corpus.action_corpus()


@pytest.fixture
def z2_raw():
    """Explicit tables of Z_2 as a one-object groupoid."""
    return {
        "objects": ["*"],
        "morphisms": [{"id": "e", "dom": "*", "cod": "*"}, {"id": "g", "dom": "*", "cod": "*"}],
        "comp": [["e", "e", "e"], ["e", "g", "g"], ["g", "e", "g"], ["g", "g", "e"]],
        "inv": [["e", "e"], ["g", "g"]],
        "identities": {"*": "e"},
    }
