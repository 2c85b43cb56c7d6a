# tests/conftest.py

from __future__ import annotations
import json
from pathlib import Path

import pytest

from lrc.code_params import design_code, spec_from_json
from lrc.number_field import nf_new

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

EXAMPLE_MIN_POLY = [2, 0, -4, 0]     # x^4 - 4x^2 + 2
EXAMPLE_PRIMES = [17, 31, 47]


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def example_field():
    return nf_new(EXAMPLE_MIN_POLY)


@pytest.fixture(scope="session")
def example_spec(example_field):
    return design_code(example_field, 3, 3, 2, EXAMPLE_PRIMES)


@pytest.fixture(scope="session")
def bundled_spec():
    return spec_from_json(json.loads((DATA_DIR / "example_spec.json").read_text()))


@pytest.fixture(scope="session")
def eisenstein_field():
    # x^2 + x + 1
    return nf_new([1, 1])
