import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from fractions import Fraction as Q

import pytest

from wmin import catalog


@pytest.fixture(scope="session")
def all_algebras():
    return [catalog.psl22(), catalog.sl2m(3), catalog.sl2m(4), catalog.sl2m(5),
            catalog.spo2m(3), catalog.spo2m(5), catalog.spo2m(6), catalog.spo2m(7),
            catalog.osp4m(4), catalog.osp4m(6),
            catalog.d21a(1, 1), catalog.d21a(2, 1), catalog.d21a(2, 3),
            catalog.d21a(3, 4), catalog.f4(), catalog.g3()]


@pytest.fixture(scope="session")
def unitary_families():
    """Families with a non-trivial unitarity range, representative parameters."""
    return [catalog.psl22(), catalog.spo2m(3), catalog.spo2m(5), catalog.spo2m(6),
            catalog.d21a(1, 1), catalog.d21a(2, 1), catalog.d21a(2, 3),
            catalog.f4(), catalog.g3()]
