from __future__ import annotations

from pathlib import Path

import pytest

from helpers import retail_database

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def retail_db():
    return retail_database()


@pytest.fixture(scope="session")
def retail_paths():
    return DATA_DIR / "retail.seq", DATA_DIR / "retail.prof"
