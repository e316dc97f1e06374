from __future__ import annotations

import os
from collections.abc import Generator

import pytest

os.environ.setdefault("COSETCAP_LOG_LEVEL", "WARNING")
os.environ.setdefault("COSETCAP_MAX_WORKERS", "2")
os.environ.setdefault("COSETCAP_ENUMERATION_CAP", "12")

from app.core.config import get_settings
from app.services.cat_analytic import cat_code, rotated_cat_code
from app.services.pauli_algebra import StabilizerCode


@pytest.fixture(autouse=True)
def reset_settings() -> Generator[None, None, None]:
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def cat2() -> StabilizerCode:
    return cat_code(2)


@pytest.fixture
def cat3() -> StabilizerCode:
    return cat_code(3)


@pytest.fixture
def rotcat5() -> StabilizerCode:
    return rotated_cat_code(5)
