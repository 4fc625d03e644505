import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for oracles.py

from sboxkit import TowerCtx, create_field


@pytest.fixture(scope="session")
def f8():
    return create_field(3)


@pytest.fixture(scope="session")
def f32():
    return create_field(5)


@pytest.fixture(scope="session")
def t6(f8):
    return TowerCtx(f8)


@pytest.fixture(scope="session")
def t10(f32):
    return TowerCtx(f32)


@pytest.fixture(scope="session")
def t14():
    return TowerCtx(create_field(7))
