from pathlib import Path

import pytest

from occumine import load_database

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"
TEST_DATA_DIR = Path(__file__).resolve().parent / "data"

EXAMPLE_TRANSACTIONS = DATA_DIR / "example_transactions.txt"
EXAMPLE_UTILITIES = DATA_DIR / "example_utilities.txt"


@pytest.fixture(scope="session")
def example_db():
    """The ten-transaction, five-item example database."""
    return load_database(EXAMPLE_TRANSACTIONS, EXAMPLE_UTILITIES)
