import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from invgen import families

# one shared instance per catalog group so class/maximal computations are
# cached across the whole session
_GROUPS: dict[str, object] = {}

STRUCT_CAP = 25_000     # raised past the default so A8 (order 20160) is exact


@pytest.fixture(scope="session")
def catalog():
    return families.load_catalog()


@pytest.fixture(scope="session")
def get_group(catalog):
    def _get(name: str):
        if name not in _GROUPS:
            entry = next(e for e in catalog if e.name == name)
            _GROUPS[name] = families.instantiate(entry)
        return _GROUPS[name]
    return _get
