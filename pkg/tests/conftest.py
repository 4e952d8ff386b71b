import pytest

from heckecells import build_system
from heckecells.cells import CellDecomposition
from heckecells.hecke import HeckeTable

_CACHE: dict[str, CellDecomposition] = {}


@pytest.fixture(scope="session")
def cells_for():
    """Shared per-type cell decompositions (construction dominates runtime)."""

    def get(type_str: str) -> CellDecomposition:
        if type_str not in _CACHE:
            system = build_system(type_str)
            _CACHE[type_str] = CellDecomposition(HeckeTable(system))
        return _CACHE[type_str]

    return get
