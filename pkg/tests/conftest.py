import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.representations.catalog import KnotCatalog  # noqa: E402


@pytest.fixture(scope="session")
def catalog():
    return KnotCatalog()


@pytest.fixture(scope="session")
def reference(catalog):
    """Reference polynomial by catalog key."""
    return catalog.polynomial
