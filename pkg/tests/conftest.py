import pytest

from cubicmaps.genus import GenusTable


@pytest.fixture(scope="session")
def table():
    """One solved table shared by the whole run; append-only, deterministic."""
    t = GenusTable()
    t.ensure(12)
    return t
