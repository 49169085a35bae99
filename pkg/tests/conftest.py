"""
Shared fixtures for the UML2XML test suite.
"""

import os
import random
import sys
from pathlib import Path

import pytest

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

FIXTURES = Path(__file__).parent / "fixtures"
INVALID = FIXTURES / "invalid"
PROPERTY_CASES = 1000


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def raw_corpus_path() -> Path:
    return FIXTURES / "corpus_paper_raw.uml"


@pytest.fixture
def corrected_corpus_path() -> Path:
    return FIXTURES / "corpus_corrected.uml"


@pytest.fixture
def raw_corpus(raw_corpus_path) -> str:
    return raw_corpus_path.read_text(encoding="utf-8")


@pytest.fixture
def corrected_corpus(corrected_corpus_path) -> str:
    return corrected_corpus_path.read_text(encoding="utf-8")


@pytest.fixture
def expected_xml() -> str:
    return (FIXTURES / "corpus_corrected.expected.xml").read_text(encoding="utf-8")


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator so property failures are reproducible."""
    return random.Random(20240917)
