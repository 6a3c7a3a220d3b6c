"""Shared data fixtures.

F1 is the rank-2 datum with B(a, b) = -1.25 (theta = ln 2), F2 the (3, 3, 4)
triangle group, F3 the rank-3 datum whose bonds are all infinite with
B = -1.01, and ``finite`` the dihedral group of order 6.
"""

from pathlib import Path

import pytest

from limitroots.models.datum import CoxeterDatum
from limitroots.services.datum_service import DatumService

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name: str) -> CoxeterDatum:
    path = FIXTURES / name
    return DatumService.load(path.read_text(), DatumService.detect_format(str(path)))


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def f1() -> CoxeterDatum:
    return load_fixture("f1.gram")


@pytest.fixture
def f2() -> CoxeterDatum:
    return load_fixture("f2.cox")


@pytest.fixture
def f3() -> CoxeterDatum:
    return load_fixture("f3.gram")


@pytest.fixture
def finite() -> CoxeterDatum:
    return load_fixture("finite.gram")
