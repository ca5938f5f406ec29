import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from corpus import fano, named_corpus  # noqa: E402


@pytest.fixture
def fano_plane():
    return fano()


@pytest.fixture(scope="session")
def corpus():
    return named_corpus()
