from __future__ import annotations

import pytest

from tests.util import Planted, build_planted


@pytest.fixture(scope="session")
def planted() -> Planted:
    """The synthetic twin-language corpus, built once per session."""
    return build_planted()
