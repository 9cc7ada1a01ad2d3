import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))

from models.nef_witness import SearchConfig  # noqa: E402
from services.nef_search import search  # noqa: E402


@pytest.fixture(scope="session")
def search_230_r8():
    return search(SearchConfig(max_k=230, max_roots=8))


@pytest.fixture(scope="session")
def search_230_r10():
    return search(SearchConfig(max_k=230, max_roots=10))
