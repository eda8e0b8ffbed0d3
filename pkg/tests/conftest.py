import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fanih import corpus  # noqa: E402
from fanih.ihlib import ih  # noqa: E402


@lru_cache(maxsize=None)
def fan(name: str):
    return corpus.fan(name)


@lru_cache(maxsize=None)
def ih_of(name: str):
    return ih(fan(name))


@pytest.fixture
def get_fan():
    return fan


@pytest.fixture
def get_ih():
    return ih_of
